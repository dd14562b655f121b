#pragma once

// Model-free estimators on simulated series, and a dense oracle for small grids.

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <vector>

#include "qwsearch/grid.hpp"
#include "qwsearch/run_result.hpp"

namespace qwsearch {

struct Peak {
  int t_star = 0;
  double p_star = 0.0;
  bool monotone_window = false;
};

/// First t with p(t-1) < p(t) >= p(t+1). Falls back to the first argmax, with
/// monotone_window set, when no interior peak exists.
Peak find_t_star(const std::vector<double>& probs);

/// Angular frequency (radians per sample) of the dominant tone in a real series.
/// Coarse DFT peak with log-magnitude interpolation, then a least-squares
/// sinusoid fit within one bin of it.
/// Throws LowConfidenceError for short or flat series.
double estimate_frequency(const std::vector<double>& series);

/// α from Re⟨w|ψ_t⟩, which oscillates at frequency α. Needs T >= 8 t_f.
double estimate_alpha_from_series(const std::vector<std::complex<double>>& overlaps);

/// Fills t_star, p_star, monotone_window and, when the estimator is
/// confident, alpha_emp.
void summarize(RunResult& result);

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// U as a dense real matrix, column j = step(|j⟩). Throws SizeError above cap.
Eigen::MatrixXd dense_unitary(const GridSpec& grid, std::size_t cap = kDefaultDenseCap);

struct DenseSpectrum {
  std::size_t dimension = 0;
  std::vector<double> eigenphases;  // sorted, in (-π, π]
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  double max_residual = 0.0;  // max ‖Uv - λv‖
  double principal_alpha = 0.0;
  StateVector principal_vector;
};

inline constexpr double kPhaseZero = 1e-8;

DenseSpectrum dense_spectrum(const Eigen::MatrixXd& unitary, const GridSpec& grid,
                             double phase_zero = kPhaseZero);

struct BetaPlaneOverlaps {
  double claim1_raw = 0.0;  // |⟨ψ_0|β⁻⟩| with the solver's phase for ψ
  double claim1_max = 0.0;  // maximized over the global phase of ψ
  double p_raw = 0.0;       // |⟨w|β⁺⟩|²
  double p_max = 0.0;
  double p_aligned = 0.0;   // |⟨w|β⁺⟩|² at the phase that maximizes the initial-state overlap
  double beta_cross = 0.0;  // |⟨β⁺|β⁻⟩|
};

/// β± = (ψ ± ψ*)/(√2‖ψ‖) from the principal dense eigenvector.
BetaPlaneOverlaps beta_plane_overlaps(const DenseSpectrum& spectrum, const GridSpec& grid);

}  // namespace qwsearch
