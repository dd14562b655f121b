#include "qwsearch/grid.hpp"

#include <stdexcept>
#include <string>

namespace qwsearch {

GridSpec::GridSpec(int side, Vertex marked) : side_(side), marked_(marked) {
  if (side_ <= 0 || side_ % 2 != 0) {
    throw ParityError("grid side must be a positive even integer, got " +
                      std::to_string(side_));
  }
  if (!contains(marked_.x, marked_.y)) {
    throw BoundsError("marked vertex (" + std::to_string(marked_.x) + "," +
                      std::to_string(marked_.y) + ") outside a grid of side " +
                      std::to_string(side_));
  }
}

void require_analytic(const GridSpec& grid) {
  if (!grid.analytic_valid()) {
    throw ParityError("analytic predictions require side m ≡ 2 (mod 4); got m = " +
                      std::to_string(grid.side()));
  }
  if (grid.side() < 6) {
    throw ParityError("analytic predictions require m >= 6; on the m = 2 torus the "
                      "sublattices wrap onto each other");
  }
}

void require_marked_origin(const GridSpec& grid) {
  if (!(grid.marked() == Vertex{0, 0})) {
    throw std::invalid_argument("the spectral decomposition is derived for a marked vertex at the origin");
  }
}

}  // namespace qwsearch
