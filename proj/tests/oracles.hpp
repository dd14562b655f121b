#pragma once

// Brute-force references built straight from the definitions, sharing no
// code with the library kernels.

#include <Eigen/Dense>

#include <complex>
#include <random>

#include "qwsearch/grid.hpp"

namespace qwsearch::testing {

// 2 Σ_c |u_c⟩⟨u_c| - I with u_c uniform on the 2x2 cell anchored at
// (2i + shift, 2j + shift).
inline Eigen::MatrixXd cell_reflection_matrix(const GridSpec& g, int shift) {
  const int m = g.side();
  const Eigen::Index n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < m / 2; ++i) {
    for (int j = 0; j < m / 2; ++j) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          u(static_cast<Eigen::Index>(g.index((2 * i + shift + a) % m, (2 * j + shift + b) % m))) = 0.5;
      proj += u * u.transpose();
    }
  }
  return 2.0 * proj - Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::MatrixXd oracle_matrix(const GridSpec& g) {
  const Eigen::Index n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd u = -Eigen::MatrixXd::Identity(n, n);
  const auto w = static_cast<Eigen::Index>(g.marked_index());
  u(w, w) = 1.0;
  return u;
}

inline Eigen::MatrixXd step_matrix(const GridSpec& g) {
  const Eigen::MatrixXd uw = oracle_matrix(g);
  return cell_reflection_matrix(g, 1) * uw * cell_reflection_matrix(g, 0) * uw;
}

inline StateVector random_state(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  StateVector s(g);
  for (Eigen::Index i = 0; i < s.size(); ++i) s.amplitudes()(i) = {gauss(rng), gauss(rng)};
  s.amplitudes().normalize();
  return s;
}

inline double max_abs_diff(const StateVector& a, const Eigen::VectorXcd& b) {
  return (a.amplitudes() - b).cwiseAbs().maxCoeff();
}

}  // namespace qwsearch::testing
