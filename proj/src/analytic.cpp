#include "qwsearch/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "qwsearch/errors.hpp"

namespace qwsearch {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;
const cd kI{0.0, 1.0};

double cot(double z) { return std::cos(z) / std::sin(z); }

double n_of(const GridSpec& grid) { return static_cast<double>(grid.vertex_count()); }

// Calls f(k̃, l̃) for every block except (0, 0), row-major.
template <class F>
void for_each_block_angle(const GridSpec& grid, F&& f) {
  const int m = grid.side();
  const int half = grid.half_side();
  for (int k = 0; k < half; ++k) {
    for (int l = 0; l < half; ++l) {
      if (k == 0 && l == 0) continue;
      f(2.0 * kPi * k / m, 2.0 * kPi * l / m);
    }
  }
}

struct APieces {
  double A11 = 0.0;
  cd A12;
};

APieces a_pieces(const Psi1Decomposition& d, double alpha) {
  const double c0 = cot(alpha / 2.0);
  APieces out;
  out.A11 = d.a_sq * c0;
  out.A12 = -d.a2_psi2psi1 * c0;
  for (const auto& p : d.pairs) {
    const double cm = cot((alpha - p.theta) / 2.0);
    const double cp = cot((alpha + p.theta) / 2.0);
    out.A11 += std::norm(p.a_plus) * cm + std::norm(p.a_minus) * cp;
    out.A12 -= p.a_plus * p.a_minus * (cm + cp);
  }
  return out;
}

// Adds coeff·conj(Σ_β r[β] ψ_kl^(β)) into the partner block.
void add_conjugate(const GridSpec& grid, BlockCoefficients& acc, int k, int l,
                   const Eigen::Vector4cd& r, cd coeff) {
  const BlockIndex partner = conjugate_partner(grid, k, l);
  const Eigen::Vector4d sigma = conjugation_signs(k, l);
  const std::size_t slot = static_cast<std::size_t>(partner.k) * grid.half_side() + partner.l;
  acc[slot] += coeff * r.conjugate().cwiseProduct(sigma.cast<cd>());
}

}  // namespace

double compute_B_minus_Cx(const GridSpec& grid) {
  require_analytic(grid);
  double sum = 0.0;
  for_each_block_angle(grid, [&](double kt, double lt) {
    const double cc = std::cos(kt) * std::cos(lt);
    sum += 1.0 / (1.0 - cc * cc);
  });
  return 2.0 / n_of(grid) * sum;
}

std::complex<double> B_minus_Cx_from_coefficients(const Psi1Decomposition& d, cd x) {
  double B = 0.0;
  cd C = 0.0;
  for (const auto& p : d.pairs) {
    const double s = std::sin(p.theta / 2.0);
    B += (std::norm(p.a_plus) + std::norm(p.a_minus)) / (2.0 * s * s);
    C += p.a_minus * p.a_plus / (s * s);
  }
  return B - C * std::conj(x);
}

std::complex<double> compute_x(const Psi1Decomposition& d) {
  const cd denom = std::conj(d.a2_psi2psi1);
  if (std::abs(denom) < 1e-300) throw NumericalError("compute_x: vanishing a²⟨ψ'_2|ψ'_1⟩");
  const cd x = d.a_sq / denom;
  return x / std::abs(x);
}

double compute_alpha(const GridSpec& grid) {
  return std::sqrt(8.0 / (n_of(grid) * compute_B_minus_Cx(grid)));
}

int optimal_steps(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("optimal_steps: alpha must be positive");
  const double t = std::floor(kPi / (2.0 * alpha) + 0.5);
  return std::max(1, static_cast<int>(t));
}

double compute_cos_beta(double alpha) { return (1.0 + kSqrt3 * alpha / 4.0) / kSqrt2; }

double compute_psi_norm_sq(const GridSpec& grid, double alpha) {
  return 24.0 / (n_of(grid) * alpha * alpha);
}

EFSums compute_E_F_sums(const GridSpec& grid) {
  require_analytic(grid);
  double s_minus = 0.0, s_plus = 0.0, s_f = 0.0;
  for_each_block_angle(grid, [&](double kt, double lt) {
    const double cc = std::cos(kt) * std::cos(lt);
    const double eps = cc < 0.0 ? -1.0 : 1.0;
    const double denom = 1.0 - cc * cc;
    s_minus += 1.0 - eps * std::sin(kt + lt) / std::sqrt(denom);
    s_plus += std::sin(2.0 * kt) * std::sin(2.0 * lt) / denom;
    s_f += eps * std::sin(kt) * std::sin(lt) / denom;
  });
  const double n = n_of(grid);
  EFSums out;
  out.E_minus = kSqrt2 * cd(kSqrt3, -1.0) / n * s_minus;
  out.E_plus = -kI / kSqrt3 * out.E_minus - cd(1.0, kSqrt3) / (n * std::sqrt(6.0)) * s_plus;
  out.F = kSqrt2 * cd(1.0, kSqrt3) / n * s_f;
  return out;
}

EFSums E_F_from_coefficients(const Psi1Decomposition& d, cd x) {
  EFSums out;
  for (const auto& p : d.pairs) {
    const cd minus_p = (p.a_plus - std::conj(p.a_minus) * x) * p.overlap_plus;
    const cd minus_m = (p.a_minus - std::conj(p.a_plus) * x) * p.overlap_minus;
    out.E_minus += minus_p + minus_m;
    out.E_plus += (p.a_plus + std::conj(p.a_minus) * x) * p.overlap_plus +
                  (p.a_minus + std::conj(p.a_plus) * x) * p.overlap_minus;
    out.F += cot(p.theta / 2.0) * (minus_p - minus_m);
  }
  return out;
}

EFSums E_F_closed_forms(const GridSpec& grid) {
  const double f = 1.0 - 4.0 / n_of(grid);
  return {cd(kSqrt3, -1.0) / (2.0 * kSqrt2) * f, -cd(1.0, kSqrt3) / (2.0 * std::sqrt(6.0)) * f,
          0.0};
}

std::complex<double> compute_overlap_00_psi(const GridSpec& grid, double alpha) {
  const double n = n_of(grid);
  return -kSqrt3 * cd(1.0, kSqrt3) / 4.0 * (1.0 + 1.0 / n) +
         kSqrt3 * cd(kSqrt3, -1.0) / (n * alpha);
}

std::complex<double> overlap_00_psi_expanded(double alpha, cd x, const EFSums& s) {
  const cd xc = std::conj(x);
  return 5.0 * kSqrt3 * xc / 8.0 + kSqrt3 / (kSqrt2 * alpha) * (kI * xc / kSqrt2 - s.E_minus) -
         3.0 / (4.0 * kSqrt2) * s.E_plus - kSqrt3 / (2.0 * kSqrt2) * s.F;
}

double predict_success_probability(cd overlap, double psi_norm_sq) {
  const double re = overlap.real();
  return 2.0 * re * re / psi_norm_sq;
}

Claim1Overlap predict_claim1_overlap(const GridSpec& grid, double alpha, double psi_norm_sq) {
  // ⟨ψ_0|ψ⟩ ≈ √3(√3 - i)/(√N α); only the component along β⁻ ∝ ψ - ψ* counts.
  const cd z = kSqrt3 * cd(kSqrt3, -1.0) / (std::sqrt(n_of(grid)) * alpha);
  const double denom = kSqrt2 * std::sqrt(psi_norm_sq);
  const cd za = z * std::polar(1.0, -kPi / 3.0);
  return {std::abs(z - std::conj(z)) / denom, std::abs(za - std::conj(za)) / denom};
}

StateVector build_psi_vector(const Psi1Decomposition& d, double alpha, double cos_beta, cd x) {
  const GridSpec& grid = d.grid;
  const int half = grid.half_side();
  const double sin_beta = std::sqrt(std::max(0.0, 1.0 - cos_beta * cos_beta));
  const double h = kSqrt3 / 2.0;
  BlockCoefficients acc(static_cast<std::size_t>(half * half), Eigen::Vector4cd::Zero());

  // a|ψ'_1⟩ and a|ψ'_2⟩ = conj(a|ψ'_1⟩)
  const cd unit = h * cd(cot(alpha / 2.0), -1.0);
  for (int k = 0; k < half; ++k) {
    for (int l = 0; l < half; ++l) {
      const std::size_t slot = static_cast<std::size_t>(k) * half + l;
      const Eigen::Vector4cd& r = d.unit_part[slot];
      acc[slot] += unit * cos_beta * r;
      add_conjugate(grid, acc, k, l, r, -unit * x * sin_beta);
    }
  }

  for (const auto& p : d.pairs) {
    const std::size_t slot = static_cast<std::size_t>(p.k) * half + p.l;
    const Eigen::Vector4cd w2 = d.blocks[slot].eigvecs.col(2);
    const cd cp = h * cd(cot((alpha - p.theta) / 2.0), -1.0) *
                  (p.a_plus * cos_beta - std::conj(p.a_minus) * x * sin_beta);
    const cd cm = h * cd(cot((alpha + p.theta) / 2.0), -1.0) *
                  (p.a_minus * cos_beta - std::conj(p.a_plus) * x * sin_beta);
    acc[slot] += cp * w2;
    add_conjugate(grid, acc, p.k, p.l, w2, cm);
  }
  return synthesize(grid, acc);
}

double alpha_determinant(const Psi1Decomposition& d, double alpha) {
  const APieces a = a_pieces(d, alpha);
  return kSqrt3 * a.A11 - std::sqrt(1.0 + 3.0 * std::norm(a.A12));
}

ExactAlpha solve_alpha_exact(const Psi1Decomposition& d) {
  double lo = 1e-9;
  double hi = d.theta_min() - 1e-9;
  const double f_lo = alpha_determinant(d, lo);
  const double f_hi = alpha_determinant(d, hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "solve_alpha_exact: no root bracketed in (" << lo << ", " << hi << "); scan:";
    for (int i = 0; i <= 8; ++i) {
      const double a = lo + (hi - lo) * i / 8.0;
      msg << " d(" << a << ")=" << alpha_determinant(d, a);
    }
    throw NumericalError(msg.str());
  }
  const auto root = boost::math::tools::bisect([&](double a) { return alpha_determinant(d, a); },
                                               lo, hi, boost::math::tools::eps_tolerance<double>());
  ExactAlpha out;
  out.alpha = 0.5 * (root.first + root.second);
  const APieces a = a_pieces(d, out.alpha);
  const double mod12 = std::abs(a.A12);
  out.cos_beta = std::cos(std::atan2(kSqrt3 * a.A11 - 1.0, kSqrt3 * mod12));
  out.x = mod12 > 0.0 ? -mod12 / std::conj(a.A12) : compute_x(d);
  return out;
}

ExactAlpha solve_alpha_exact(const GridSpec& grid) { return solve_alpha_exact(decompose_psi1(grid)); }

AnalyticReport analyze(const GridSpec& grid, bool with_exact) {
  require_analytic(grid);
  require_marked_origin(grid);
  const Psi1Decomposition d = decompose_psi1(grid);

  AnalyticReport r;
  r.m = grid.side();
  r.N = static_cast<long long>(grid.vertex_count());
  r.B_minus_Cx = compute_B_minus_Cx(grid);
  r.alpha = std::sqrt(8.0 / (n_of(grid) * r.B_minus_Cx));
  r.t_f = kPi / (2.0 * r.alpha);
  r.t_f_rounded = optimal_steps(r.alpha);
  r.cos_beta = compute_cos_beta(r.alpha);
  r.x = compute_x(d);
  r.psi_norm_sq = compute_psi_norm_sq(grid, r.alpha);
  r.overlap_00_psi = compute_overlap_00_psi(grid, r.alpha);
  r.p_pred = predict_success_probability(r.overlap_00_psi, r.psi_norm_sq);
  const Claim1Overlap c1 = predict_claim1_overlap(grid, r.alpha, r.psi_norm_sq);
  r.claim1_overlap = c1.unadjusted;
  r.claim1_overlap_adjusted = c1.adjusted;
  const EFSums s = compute_E_F_sums(grid);
  r.E_minus = s.E_minus;
  r.E_plus = s.E_plus;
  r.F = s.F;
  if (with_exact) r.alpha_exact = solve_alpha_exact(d).alpha;
  return r;
}

}  // namespace qwsearch
