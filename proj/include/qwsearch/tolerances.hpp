#pragma once

namespace qwsearch {

struct Tolerances {
  double unitarity = 1e-10;
  double sum_identity = 1e-10;
  // |phase| below this counts as eigenvalue 1.
  double phase_zero = 1e-8;
  // Smallest admissible eigenvector normalization scalar off the (0,0) block.
  double degenerate_norm = 1e-14;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace qwsearch
