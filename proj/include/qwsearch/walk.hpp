#pragma once

#include <array>
#include <cstddef>

#include "qwsearch/grid.hpp"
#include "qwsearch/run_result.hpp"

namespace qwsearch {

enum class Parity { even, odd };

/// Partition of the torus into 2x2 cells. Even cells are anchored at
/// (2x, 2y), odd cells at (2x+1, 2y+1) with wraparound.
class Tessellation {
 public:
  Tessellation(const GridSpec& grid, Parity parity) : grid_(grid), parity_(parity) {}

  Parity parity() const { return parity_; }
  int cells_per_axis() const { return grid_.half_side(); }

  /// Anchor (lower-left corner) of the cell containing (x, y).
  Vertex cell_of(int x, int y) const {
    const int shift = parity_ == Parity::odd ? 1 : 0;
    auto anchor = [&](int c) { return grid_.wrap(((grid_.wrap(c - shift)) / 2) * 2 + shift); };
    return {anchor(x), anchor(y)};
  }

  /// Vertex indices of cell (cx, cy) in the fixed order 00, 01, 10, 11.
  std::array<std::size_t, 4> cell_vertices(int cx, int cy) const {
    const int shift = parity_ == Parity::odd ? 1 : 0;
    const int x0 = grid_.wrap(2 * cx + shift);
    const int x1 = grid_.wrap(2 * cx + shift + 1);
    const int y0 = grid_.wrap(2 * cy + shift);
    const int y1 = grid_.wrap(2 * cy + shift + 1);
    return {grid_.index(x0, y0), grid_.index(x0, y1), grid_.index(x1, y0), grid_.index(x1, y1)};
  }

 private:
  GridSpec grid_;
  Parity parity_;
};

namespace detail {

// 2Π - I restricted to each cell: ψ_v -> S/2 - ψ_v.
template <typename Real>
void reflect_cells(BasicStateVector<Real>& state, Parity parity) {
  using Scalar = typename BasicStateVector<Real>::Scalar;
  const int m = state.grid().side();
  const int half = m / 2;
  const int shift = parity == Parity::odd ? 1 : 0;
  Scalar* a = state.data();
  const Real h = Real(0.5);
  for (int cx = 0; cx < half; ++cx) {
    const int x0 = 2 * cx + shift;
    const int x1 = (x0 + 1) % m;
    Scalar* row0 = a + static_cast<std::ptrdiff_t>(x0) * m;
    Scalar* row1 = a + static_cast<std::ptrdiff_t>(x1) * m;
    for (int cy = 0; cy < half; ++cy) {
      const int y0 = 2 * cy + shift;
      const int y1 = (y0 + 1) % m;
      const Scalar s = ((row0[y0] + row0[y1]) + row1[y0]) + row1[y1];
      const Scalar hs = s * h;
      row0[y0] = hs - row0[y0];
      row0[y1] = hs - row0[y1];
      row1[y0] = hs - row1[y0];
      row1[y1] = hs - row1[y1];
    }
  }
}

// 2|w><w| - I: marked amplitude kept, all others negated.
template <typename Real>
void reflect_marked(BasicStateVector<Real>& state) {
  const std::size_t w = state.grid().marked_index();
  const auto keep = state[w];
  state.amplitudes() = -state.amplitudes();
  state[w] = keep;
}

}  // namespace detail

template <typename Real>
void even_reflection_in_place(BasicStateVector<Real>& s) { detail::reflect_cells(s, Parity::even); }

template <typename Real>
void odd_reflection_in_place(BasicStateVector<Real>& s) { detail::reflect_cells(s, Parity::odd); }

template <typename Real>
void oracle_in_place(BasicStateVector<Real>& s) { detail::reflect_marked(s); }

/// U = U_o U_w U_e U_w.
template <typename Real>
void step_in_place(BasicStateVector<Real>& s) {
  detail::reflect_marked(s);
  detail::reflect_cells(s, Parity::even);
  detail::reflect_marked(s);
  detail::reflect_cells(s, Parity::odd);
}

/// U^{-1} = U_w U_e U_w U_o.
template <typename Real>
void step_inverse_in_place(BasicStateVector<Real>& s) {
  detail::reflect_cells(s, Parity::odd);
  detail::reflect_marked(s);
  detail::reflect_cells(s, Parity::even);
  detail::reflect_marked(s);
}

template <typename Real>
BasicStateVector<Real> apply_even_reflection(BasicStateVector<Real> s) {
  even_reflection_in_place(s);
  return s;
}

template <typename Real>
BasicStateVector<Real> apply_odd_reflection(BasicStateVector<Real> s) {
  odd_reflection_in_place(s);
  return s;
}

template <typename Real>
BasicStateVector<Real> apply_oracle(BasicStateVector<Real> s) {
  oracle_in_place(s);
  return s;
}

template <typename Real>
BasicStateVector<Real> step(BasicStateVector<Real> s) {
  step_in_place(s);
  return s;
}

template <typename Real>
BasicStateVector<Real> apply_step_inverse(BasicStateVector<Real> s) {
  step_inverse_in_place(s);
  return s;
}

/// U_1 = U_e U_w U_e U_w; U_1^3 = I.
template <typename Real>
BasicStateVector<Real> apply_u1(BasicStateVector<Real> s) {
  detail::reflect_marked(s);
  detail::reflect_cells(s, Parity::even);
  detail::reflect_marked(s);
  detail::reflect_cells(s, Parity::even);
  return s;
}

/// U_2 = U_o U_e.
template <typename Real>
BasicStateVector<Real> apply_u2(BasicStateVector<Real> s) {
  detail::reflect_cells(s, Parity::even);
  detail::reflect_cells(s, Parity::odd);
  return s;
}

/// Evolves the uniform state for `steps` steps and records ⟨w|ψ_t⟩ for
/// t = 0..steps. Only the series is filled; see summarize().
RunResult run(const GridSpec& grid, int steps);

}  // namespace qwsearch
