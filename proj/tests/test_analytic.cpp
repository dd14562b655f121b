#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qwsearch/analytic.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/harness.hpp"
#include "qwsearch/walk.hpp"

using namespace qwsearch;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

const std::vector<int> kSmallSides = {6, 10, 14, 22, 30};
const std::vector<int> kWideSides = {6, 10, 14, 22, 30, 46, 62, 94, 126, 190, 254};

double log_n(int m) { return std::log(static_cast<double>(m) * m); }

// max/mean - 1 and min/mean - 1 must both stay inside ±band.
void expect_flat(const std::vector<double>& v, double band, const char* what) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  EXPECT_LT(*hi / mean - 1.0, band) << what;
  EXPECT_GT(*lo / mean - 1.0, -band) << what;
}

double residual(const StateVector& psi, double alpha) {
  const StateVector u = step(psi);
  return (u.amplitudes() - std::polar(1.0, alpha) * psi.amplitudes()).norm() / psi.norm();
}

}  // namespace

TEST(BMinusCx, HandValueAtSix) {
  EXPECT_NEAR(compute_B_minus_Cx(GridSpec(6)), 8.0 / 15.0, 1e-15);
  EXPECT_THROW(compute_B_minus_Cx(GridSpec(8)), ParityError);
}

TEST(BMinusCx, CoefficientRouteAgrees) {
  for (int m : kSmallSides) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const cd route = B_minus_Cx_from_coefficients(d, compute_x(d));
    EXPECT_NEAR(route.real(), compute_B_minus_Cx(g), 1e-9) << m;
    EXPECT_NEAR(route.imag(), 0.0, 1e-9) << m;
  }
}

TEST(BMinusCx, GrowsLikeLogN) {
  std::vector<double> ratio;
  for (int m : kWideSides) ratio.push_back(compute_B_minus_Cx(GridSpec(m)) / log_n(m));
  expect_flat(ratio, 0.25, "(B - Cx*)/ln N");
}

TEST(X, UnitModulusWithPhaseTwoPiOverThree) {
  double last_gap = 1.0;
  for (int m : {6, 10, 14, 22, 30, 46, 62}) {
    const cd x = compute_x(decompose_psi1(GridSpec(m)));
    EXPECT_NEAR(std::abs(x), 1.0, 1e-12);
    const double gap = std::abs(std::arg(x) - 2.0 * kPi / 3.0);
    EXPECT_LT(gap, 0.1);
    EXPECT_LE(gap, last_gap + 1e-12);
    last_gap = gap;
  }
}

TEST(Alpha, LeadingOrderValueAndBounds) {
  EXPECT_NEAR(compute_alpha(GridSpec(6)), std::sqrt(5.0 / 12.0), 1e-14);
  std::vector<double> scaled;
  for (int m : kWideSides) {
    const double a = compute_alpha(GridSpec(m));
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 4.0 * kPi / m) << m;
    scaled.push_back(a * std::sqrt(static_cast<double>(m) * m * log_n(m)));
  }
  expect_flat(scaled, 0.25, "alpha sqrt(N log N)");
}

TEST(OptimalSteps, RoundingContract) {
  EXPECT_EQ(optimal_steps(compute_alpha(GridSpec(6))), 2);
  EXPECT_EQ(optimal_steps(kPi / 2.0), 1);
  EXPECT_EQ(optimal_steps(3.0), 1);
  EXPECT_EQ(optimal_steps(kPi / 5.0), 3);  // 2.5 rounds up
  EXPECT_THROW(optimal_steps(0.0), std::invalid_argument);

  std::vector<double> xs, ys;
  for (int m : {6, 10, 14, 22, 30, 46, 62}) {
    xs.push_back(std::sqrt(m * m * log_n(m)));
    ys.push_back(kPi / (2.0 * compute_alpha(GridSpec(m))));
  }
  EXPECT_GT(fit_linear(xs, ys).r_squared, 0.99);
}

TEST(CosBeta, Examples) {
  EXPECT_NEAR(compute_cos_beta(0.0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(compute_cos_beta(0.6455), 0.9048, 1e-4);
  const double beta = std::acos(compute_cos_beta(1e-6));
  EXPECT_NEAR(std::sin(2.0 * beta), 1.0, 1e-9);
}

TEST(PsiNorm, TwoRoutes) {
  EXPECT_NEAR(compute_psi_norm_sq(GridSpec(6), std::sqrt(5.0 / 12.0)), 1.6, 1e-14);
  std::vector<double> scaled;
  for (int m : kWideSides) {
    const GridSpec g(m);
    const double norm_sq = compute_psi_norm_sq(g, compute_alpha(g));
    EXPECT_NEAR(norm_sq, 3.0 * compute_B_minus_Cx(g), 1e-9);
    scaled.push_back(std::sqrt(norm_sq / log_n(m)));
  }
  expect_flat(scaled, 0.25, "|psi| / sqrt(log N)");
}

TEST(EFSums, DoubleSumsMatchClosedForms) {
  for (int m : {6, 10, 14, 22, 30, 46, 62}) {
    const GridSpec g(m);
    const EFSums s = compute_E_F_sums(g);
    const EFSums c = E_F_closed_forms(g);
    EXPECT_LT(std::abs(s.F), 1e-12) << m;
    EXPECT_LT(std::abs(s.E_minus - c.E_minus), 1e-10) << m;
    EXPECT_LT(std::abs(s.E_plus - c.E_plus), 1e-10) << m;
  }
  const double f = 8.0 / 9.0;
  const EFSums six = compute_E_F_sums(GridSpec(6));
  EXPECT_LT(std::abs(six.E_minus - cd(std::sqrt(3.0), -1.0) / (2.0 * std::sqrt(2.0)) * f), 1e-12);
  EXPECT_LT(std::abs(six.E_plus + cd(1.0, std::sqrt(3.0)) / (2.0 * std::sqrt(6.0)) * f), 1e-12);
}

TEST(EFSums, DefinitionsOverPairsAgree) {
  for (int m : kSmallSides) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const EFSums direct = E_F_from_coefficients(d, compute_x(d));
    const EFSums printed = compute_E_F_sums(g);
    EXPECT_LT(std::abs(direct.E_minus - printed.E_minus), 1e-12) << m;
    EXPECT_LT(std::abs(direct.E_plus - printed.E_plus), 1e-12) << m;
    EXPECT_LT(std::abs(direct.F), 1e-12) << m;
  }
}

TEST(Overlap00Psi, ValuesAndExpandedForm) {
  const GridSpec six(6);
  const double a6 = compute_alpha(six);
  const cd expect = -std::sqrt(3.0) * cd(1.0, std::sqrt(3.0)) / 4.0 * (37.0 / 36.0) +
                    std::sqrt(3.0) * cd(std::sqrt(3.0), -1.0) / (36.0 * a6);
  EXPECT_LT(std::abs(compute_overlap_00_psi(six, a6) - expect), 1e-14);

  for (int m : kSmallSides) {
    const GridSpec g(m);
    const double a = compute_alpha(g);
    const Psi1Decomposition d = decompose_psi1(g);
    const cd x = compute_x(d);
    const cd eq = compute_overlap_00_psi(g, a);
    EXPECT_LT(std::abs(overlap_00_psi_expanded(a, x, compute_E_F_sums(g)) - eq), 5.0 * a) << m;
    EXPECT_LT(std::abs(overlap_00_psi_expanded(a, x, E_F_closed_forms(g)) - eq), 1e-12) << m;
  }
  const GridSpec big(1022);
  EXPECT_NEAR(compute_overlap_00_psi(big, compute_alpha(big)).real(), -std::sqrt(3.0) / 4.0, 0.01);
}

TEST(SuccessProbability, RangeAndScaling) {
  std::vector<double> band;
  for (int m : {6, 10, 14, 22, 30, 46, 62}) {
    const GridSpec g(m);
    const double a = compute_alpha(g);
    const double p = predict_success_probability(compute_overlap_00_psi(g, a), compute_psi_norm_sq(g, a));
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    if (m >= 22) band.push_back(p * log_n(m));
  }
  expect_flat(band, 0.30, "p_pred log N");
  EXPECT_NEAR(predict_success_probability(cd(-std::sqrt(3.0) / 4.0, 0.3), 1.0), 2.0 * 3.0 / 16.0, 1e-15);
}

TEST(InitialStateOverlap, Predicted) {
  for (int m : {6, 30, 62, 126}) {
    const GridSpec g(m);
    const double a = compute_alpha(g);
    const Claim1Overlap c = predict_claim1_overlap(g, a, compute_psi_norm_sq(g, a));
    EXPECT_GE(c.unadjusted, 0.0);
    EXPECT_LE(c.unadjusted, 1.0 + 1e-12);
    if (m >= 30) {
      EXPECT_NEAR(c.unadjusted, 0.5, 0.1);
      EXPECT_GE(c.adjusted, 0.9);
    }
  }
}

TEST(BuildPsi, NormMatchesClosedForm) {
  // With leading-order inputs the ratio only approaches 1 like 1/log N.
  double last = 2.0;
  for (int m : {6, 14, 30, 62, 126}) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const double a = compute_alpha(g);
    const double ratio =
        build_psi_vector(d, a, compute_cos_beta(a), compute_x(d)).amplitudes().squaredNorm() / compute_psi_norm_sq(g, a);
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, last) << m;
    last = ratio;
    const ExactAlpha ex = solve_alpha_exact(d);
    const double exact_ratio = build_psi_vector(d, ex.alpha, ex.cos_beta, ex.x).amplitudes().squaredNorm() /
                               compute_psi_norm_sq(g, ex.alpha);
    EXPECT_NEAR(exact_ratio, 1.0, 0.02) << m;
  }
  EXPECT_LT(last, 1.1);
}

TEST(BuildPsi, LeadingOrderResidualShrinks) {
  double last = 1.0;
  for (int m : {6, 10, 14, 22}) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const double a = compute_alpha(g);
    const StateVector psi = build_psi_vector(d, a, compute_cos_beta(a), compute_x(d));
    const double r = residual(psi, a);
    EXPECT_LT(r, last) << m;
    last = r;
    if (m == 6) EXPECT_LT(r, 0.3);
    if (m >= 22) EXPECT_LT(r, 0.05);
    // ψ₀ is real, so ⟨ψ₀|ψ - ψ*⟩ is imaginary.
    const cd z = inner_product(uniform_state(g), StateVector(g, psi.amplitudes() - psi.amplitudes().conjugate()));
    EXPECT_NEAR(z.real(), 0.0, 1e-12);
  }
}

TEST(BuildPsi, ExactInputsGiveAnEigenvector) {
  for (int m : {6, 10, 14}) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const ExactAlpha e = solve_alpha_exact(d);
    const StateVector psi = build_psi_vector(d, e.alpha, e.cos_beta, e.x);
    EXPECT_LT(residual(psi, e.alpha), 1e-12) << m;
    EXPECT_NEAR(std::abs(e.x), 1.0, 1e-12);
  }
}

TEST(ExactAlpha, SingleSignChangeAndApproach) {
  double last_gap = 1.0;
  for (int m : {6, 10, 14, 22, 30}) {
    const GridSpec g(m);
    const Psi1Decomposition d = decompose_psi1(g);
    const double lo = 1e-9, hi = d.theta_min() - 1e-9;
    int changes = 0;
    double prev = alpha_determinant(d, lo);
    for (int i = 1; i <= 1000; ++i) {
      const double cur = alpha_determinant(d, lo + (hi - lo) * i / 1000.0);
      if ((cur > 0) != (prev > 0)) ++changes;
      prev = cur;
    }
    EXPECT_EQ(changes, 1) << m;

    const double exact = solve_alpha_exact(d).alpha;
    EXPECT_NEAR(alpha_determinant(d, exact), 0.0, 1e-6);
    const double gap = std::abs(compute_alpha(g) - exact) / exact;
    EXPECT_LT(gap, last_gap) << m;
    last_gap = gap;
    if (m >= 22) EXPECT_LT(gap, 0.15) << m;
  }
}

TEST(Analyze, ReportInvariants) {
  for (int m : {6, 10, 30}) {
    const AnalyticReport r = analyze(GridSpec(m));
    EXPECT_EQ(r.N, static_cast<long long>(m) * m);
    EXPECT_NEAR(std::abs(r.x), 1.0, 1e-12);
    EXPECT_LT(r.alpha, 4.0 * kPi / m);
    EXPECT_GT(r.p_pred, 0.0);
    EXPECT_LE(r.p_pred, 1.0);
    EXPECT_GT(r.t_f, 0.0);
    ASSERT_TRUE(r.alpha_exact.has_value());
    EXPECT_LT(*r.alpha_exact, r.alpha);
  }
  const AnalyticReport six = analyze(GridSpec(6), false);
  EXPECT_FALSE(six.alpha_exact.has_value());
  EXPECT_EQ(six.t_f_rounded, 2);
  EXPECT_NEAR(six.B_minus_Cx, 0.533333333333, 1e-12);
  EXPECT_THROW(analyze(GridSpec(8)), ParityError);
}
