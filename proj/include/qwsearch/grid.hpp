#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>

#include "qwsearch/errors.hpp"

namespace qwsearch {

struct Vertex {
  int x = 0;
  int y = 0;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Square torus of side m with one marked vertex. Vertices are indexed
/// row-major, i = x * m + y.
class GridSpec {
 public:
  explicit GridSpec(int side, Vertex marked = {0, 0});

  int side() const { return side_; }
  int half_side() const { return side_ / 2; }
  std::size_t vertex_count() const {
    return static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_);
  }
  Vertex marked() const { return marked_; }
  std::size_t marked_index() const { return index(marked_.x, marked_.y); }

  // m ≡ 2 (mod 4): the U_o U_e blocks have no eigenvalue -1.
  bool analytic_valid() const { return side_ % 4 == 2; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < side_ && y < side_;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(y);
  }
  int wrap(int c) const { return ((c % side_) + side_) % side_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int side_;
  Vertex marked_;
};

/// Throws ParityError unless m ≡ 2 (mod 4) and m >= 6.
void require_analytic(const GridSpec& grid);

/// Throws std::invalid_argument unless the marked vertex is the origin.
void require_marked_origin(const GridSpec& grid);

template <typename Real>
class BasicStateVector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicStateVector(const GridSpec& grid)
      : grid_(grid), amplitudes_(Vector::Zero(static_cast<Eigen::Index>(grid.vertex_count()))) {}

  BasicStateVector(const GridSpec& grid, Vector amplitudes)
      : grid_(grid), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != grid_.vertex_count()) {
      throw ShapeError("amplitude vector length does not match the grid");
    }
  }

  const GridSpec& grid() const { return grid_; }
  Eigen::Index size() const { return amplitudes_.size(); }

  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }

  Scalar operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
  Scalar& operator[](std::size_t i) { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  Scalar at(int x, int y) const {
    check(x, y);
    return (*this)[grid_.index(x, y)];
  }
  Scalar& at(int x, int y) {
    check(x, y);
    return (*this)[grid_.index(x, y)];
  }

  Scalar* data() { return amplitudes_.data(); }
  const Scalar* data() const { return amplitudes_.data(); }

  Real norm() const { return amplitudes_.norm(); }

  BasicStateVector conjugate() const {
    return BasicStateVector(grid_, amplitudes_.conjugate());
  }

 private:
  void check(int x, int y) const {
    if (!grid_.contains(x, y)) throw BoundsError("vertex outside the grid");
  }

  GridSpec grid_;
  Vector amplitudes_;
};

using StateVector = BasicStateVector<double>;

template <typename Real = double>
BasicStateVector<Real> uniform_state(const GridSpec& grid) {
  using Scalar = typename BasicStateVector<Real>::Scalar;
  BasicStateVector<Real> state(grid);
  const Real amp = Real(1) / std::sqrt(static_cast<Real>(grid.vertex_count()));
  state.amplitudes().setConstant(Scalar(amp, Real(0)));
  return state;
}

template <typename Real = double>
BasicStateVector<Real> basis_state(const GridSpec& grid, int x, int y) {
  if (!grid.contains(x, y)) throw BoundsError("basis_state: vertex outside the grid");
  BasicStateVector<Real> state(grid);
  state[grid.index(x, y)] = Real(1);
  return state;
}

/// ⟨a|b⟩, conjugate-linear in a.
template <typename Real>
std::complex<Real> inner_product(const BasicStateVector<Real>& a,
                                 const BasicStateVector<Real>& b) {
  if (a.grid().side() != b.grid().side()) {
    throw ShapeError("inner_product: states live on different grids");
  }
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace qwsearch
