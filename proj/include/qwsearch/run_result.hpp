#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qwsearch/grid.hpp"

namespace qwsearch {

/// Success-probability series of one walk, t = 0..T.
struct RunResult {
  GridSpec grid;
  std::vector<double> probs;
  std::vector<std::complex<double>> overlaps;  // ⟨w|ψ_t⟩

  // Filled by summarize().
  std::optional<int> t_star;
  double p_star = 0.0;
  bool monotone_window = false;
  std::optional<double> alpha_emp;
};

}  // namespace qwsearch
