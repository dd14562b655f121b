#pragma once

// Closed-form predictions for the principal eigenpair of U and the search it drives.

#include <complex>
#include <optional>

#include "qwsearch/grid.hpp"
#include "qwsearch/spectral.hpp"

namespace qwsearch {

struct EFSums {
  std::complex<double> E_minus;
  std::complex<double> E_plus;
  std::complex<double> F;
};

struct Claim1Overlap {
  double unadjusted = 0.0;  // tends to 1/2
  double adjusted = 0.0;    // after the global phase e^{-iπ/3}; tends to 1
};

struct ExactAlpha {
  double alpha = 0.0;
  double cos_beta = 0.0;
  std::complex<double> x;
};

struct AnalyticReport {
  int m = 0;
  long long N = 0;
  double B_minus_Cx = 0.0;
  double alpha = 0.0;
  double t_f = 0.0;
  int t_f_rounded = 1;
  double cos_beta = 0.0;
  std::complex<double> x;
  double psi_norm_sq = 0.0;
  std::complex<double> overlap_00_psi;
  double p_pred = 0.0;
  double claim1_overlap = 0.0;
  double claim1_overlap_adjusted = 0.0;
  std::complex<double> E_minus;
  std::complex<double> E_plus;
  std::complex<double> F;
  std::optional<double> alpha_exact;
};

/// (2/N) Σ_{(k,l) != (0,0)} 1 / (1 - cos²k̃ cos²l̃)
double compute_B_minus_Cx(const GridSpec& grid);

/// The same quantity assembled from B = Σ (|a₊|² + |a₋|²)/(2 sin²(θ/2)),
/// C = Σ a₊a₋ / sin²(θ/2) and the given x. Returned complex so callers can
/// check that the imaginary part vanishes.
std::complex<double> B_minus_Cx_from_coefficients(const Psi1Decomposition& decomp,
                                                  std::complex<double> x);

/// x = |a|² / conj(a²⟨ψ'_2|ψ'_1⟩), normalized to unit modulus.
std::complex<double> compute_x(const Psi1Decomposition& decomp);

/// Leading-order α = sqrt(8 / (N (B - Cx*))).
double compute_alpha(const GridSpec& grid);

/// round(π / 2α), at least 1.
int optimal_steps(double alpha);

double compute_cos_beta(double alpha);

/// 24 / (N α²)
double compute_psi_norm_sq(const GridSpec& grid, double alpha);

/// E⁻, E⁺, F as finite double sums over (k, l).
EFSums compute_E_F_sums(const GridSpec& grid);

/// E⁻, E⁺, F summed directly over the conjugate pairs of the decomposition.
EFSums E_F_from_coefficients(const Psi1Decomposition& decomp, std::complex<double> x);

/// Large-m closed forms: E⁻ = (√3 - i)/(2√2)(1 - 4/N), E⁺ = -(1 + i√3)/(2√6)(1 - 4/N), F = 0.
EFSums E_F_closed_forms(const GridSpec& grid);

/// ⟨00|ψ⟩ ≈ -√3(1 + i√3)/4 (1 + 1/N) + √3(√3 - i)/(N α)
std::complex<double> compute_overlap_00_psi(const GridSpec& grid, double alpha);

/// The small-α expansion before the E and F sums are replaced by closed forms.
std::complex<double> overlap_00_psi_expanded(double alpha, std::complex<double> x,
                                             const EFSums& sums);

/// 2 Re(⟨00|ψ⟩)² / ‖ψ‖²
double predict_success_probability(std::complex<double> overlap_00_psi, double psi_norm_sq);

Claim1Overlap predict_claim1_overlap(const GridSpec& grid, double alpha, double psi_norm_sq);

/// Unnormalized candidate eigenvector of U with eigenvalue e^{iα}, assembled
/// from the U_2 eigenbasis.
StateVector build_psi_vector(const Psi1Decomposition& decomp, double alpha, double cos_beta,
                             std::complex<double> x);

/// √3 A₁₁(α) - sqrt(1 + 3|A₁₂(α)|²). Positive for small α and negative just
/// below θ_min; its root is the exact α.
double alpha_determinant(const Psi1Decomposition& decomp, double alpha);

/// Bisection on alpha_determinant over (1e-9, θ_min - 1e-9).
ExactAlpha solve_alpha_exact(const Psi1Decomposition& decomp);
ExactAlpha solve_alpha_exact(const GridSpec& grid);

/// Full report. The exact α is included when with_exact is set.
AnalyticReport analyze(const GridSpec& grid, bool with_exact = true);

}  // namespace qwsearch
