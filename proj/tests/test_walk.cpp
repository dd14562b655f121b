#include <gtest/gtest.h>

#include <algorithm>
#include <complex>

#include "oracles.hpp"
#include "qwsearch/walk.hpp"

using namespace qwsearch;
using qwsearch::testing::max_abs_diff;
using qwsearch::testing::random_state;

namespace {

Eigen::VectorXcd times(const Eigen::MatrixXd& m, const StateVector& s) {
  return m.cast<std::complex<double>>() * s.amplitudes();
}

}  // namespace

TEST(Tessellation, OddCellsWrapAroundTheTorus) {
  const GridSpec g(6);
  const Tessellation odd(g, Parity::odd);
  const auto v = odd.cell_vertices(2, 2);
  EXPECT_EQ(v[0], g.index(5, 5));
  EXPECT_EQ(v[1], g.index(5, 0));
  EXPECT_EQ(v[2], g.index(0, 5));
  EXPECT_EQ(v[3], g.index(0, 0));
  EXPECT_EQ(odd.cell_of(0, 0), (Vertex{5, 5}));
  EXPECT_EQ(odd.cell_of(1, 2), (Vertex{1, 1}));

  const Tessellation even(g, Parity::even);
  EXPECT_EQ(even.cell_of(3, 4), (Vertex{2, 4}));
  EXPECT_EQ(even.cells_per_axis(), 3);
}

TEST(Walk, OperatorsMatchDenseProjectors) {
  for (int m : {2, 6, 10}) {
    for (Vertex w : {Vertex{0, 0}, Vertex{1, m - 1}}) {
      const GridSpec g(m, w);
      const auto s = random_state(g, 11u + static_cast<unsigned>(m));
      EXPECT_LT(max_abs_diff(apply_even_reflection(s), times(qwsearch::testing::cell_reflection_matrix(g, 0), s)), 1e-13);
      EXPECT_LT(max_abs_diff(apply_odd_reflection(s), times(qwsearch::testing::cell_reflection_matrix(g, 1), s)), 1e-13);
      EXPECT_LT(max_abs_diff(apply_oracle(s), times(qwsearch::testing::oracle_matrix(g), s)), 1e-15);
      EXPECT_LT(max_abs_diff(step(s), times(qwsearch::testing::step_matrix(g), s)), 1e-13);
    }
  }
}

TEST(Walk, UniformStepMatchesDenseProduct) {
  const GridSpec g(6);
  const auto psi0 = uniform_state(g);
  EXPECT_LT(max_abs_diff(step(psi0), times(qwsearch::testing::step_matrix(g), psi0)), 1e-10);
}

TEST(Walk, ReflectionsAreInvolutions) {
  const GridSpec g(10, {3, 4});
  const auto s = random_state(g, 3);
  EXPECT_LT(max_abs_diff(apply_even_reflection(apply_even_reflection(s)), s.amplitudes()), 1e-14);
  EXPECT_LT(max_abs_diff(apply_odd_reflection(apply_odd_reflection(s)), s.amplitudes()), 1e-14);
  EXPECT_EQ(max_abs_diff(apply_oracle(apply_oracle(s)), s.amplitudes()), 0.0);
}

TEST(Walk, InverseUndoesStep) {
  const GridSpec g(14, {5, 2});
  const auto s = random_state(g, 5);
  EXPECT_LT(max_abs_diff(apply_step_inverse(step(s)), s.amplitudes()), 1e-14);
  EXPECT_LT(max_abs_diff(step(apply_step_inverse(s)), s.amplitudes()), 1e-14);
}

TEST(Walk, UOneCubedIsIdentity) {
  const GridSpec g(6);
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto s = random_state(g, seed);
    EXPECT_LT(max_abs_diff(apply_u1(apply_u1(apply_u1(s))), s.amplitudes()), 1e-12);
  }
}

TEST(Walk, StepFactorsThroughUOneAndUTwo) {
  // U = U_o U_w U_e U_w = U_o U_e (U_e U_w U_e U_w) = U_2 U_1
  const GridSpec g(10);
  const auto s = random_state(g, 9);
  EXPECT_LT(max_abs_diff(step(s), apply_u2(apply_u1(s)).amplitudes()), 1e-13);
}

TEST(Walk, RealStatesStayReal) {
  const GridSpec g(10, {4, 4});
  auto s = uniform_state(g);
  for (int t = 0; t < 50; ++t) step_in_place(s);
  EXPECT_EQ(s.amplitudes().imag().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Walk, SinglePrecisionKernel) {
  const GridSpec g(10);
  auto sf = uniform_state<float>(g);
  auto sd = uniform_state<double>(g);
  for (int t = 0; t < 20; ++t) {
    step_in_place(sf);
    step_in_place(sd);
  }
  EXPECT_NEAR(std::norm(sf[0]), std::norm(sd[0]), 1e-5);
}

TEST(Run, RecordsSeriesFromUniformStart) {
  const GridSpec g(6);
  const RunResult r = run(g, 40);
  ASSERT_EQ(r.probs.size(), 41u);
  ASSERT_EQ(r.overlaps.size(), 41u);
  EXPECT_NEAR(r.probs[0], 1.0 / 36.0, 1e-12);
  for (std::size_t t = 0; t < r.probs.size(); ++t) {
    EXPECT_GE(r.probs[t], 0.0);
    EXPECT_LE(r.probs[t], 1.0);
    EXPECT_NEAR(r.probs[t], std::norm(r.overlaps[t]), 1e-15);
  }
  EXPECT_FALSE(r.t_star.has_value());
  EXPECT_THROW(run(g, -1), std::invalid_argument);
  EXPECT_EQ(run(g, 0).probs.size(), 1u);
}
