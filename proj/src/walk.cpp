#include "qwsearch/walk.hpp"

#include <stdexcept>

namespace qwsearch {

RunResult run(const GridSpec& grid, int steps) {
  if (steps < 0) throw std::invalid_argument("run: steps must be non-negative");
  RunResult result{.grid = grid};
  result.probs.reserve(static_cast<std::size_t>(steps) + 1);
  result.overlaps.reserve(static_cast<std::size_t>(steps) + 1);

  StateVector state = uniform_state(grid);
  const std::size_t w = grid.marked_index();
  auto record = [&] {
    const auto amp = state[w];
    result.overlaps.push_back(amp);
    result.probs.push_back(std::norm(amp));
  };
  record();
  for (int t = 0; t < steps; ++t) {
    step_in_place(state);
    record();
  }
  return result;
}

}  // namespace qwsearch
