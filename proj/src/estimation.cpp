#include "qwsearch/estimation.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "qwsearch/errors.hpp"
#include "qwsearch/walk.hpp"

namespace qwsearch {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Energy captured by the best fit a cos ωt + b sin ωt + c.
double fit_energy(const Eigen::VectorXd& s, double omega) {
  const Eigen::Index n = s.size();
  Eigen::MatrixXd basis(n, 3);
  for (Eigen::Index t = 0; t < n; ++t) {
    const double wt = omega * static_cast<double>(t);
    basis(t, 0) = std::cos(wt);
    basis(t, 1) = std::sin(wt);
    basis(t, 2) = 1.0;
  }
  const Eigen::Vector3d coef = basis.colPivHouseholderQr().solve(s);
  return (basis * coef).squaredNorm();
}

}  // namespace

Peak find_t_star(const std::vector<double>& probs) {
  if (probs.size() < 3) throw std::invalid_argument("find_t_star: need at least 3 samples");
  for (std::size_t t = 1; t + 1 < probs.size(); ++t) {
    if (probs[t - 1] < probs[t] && probs[t] >= probs[t + 1]) {
      return {static_cast<int>(t), probs[t], false};
    }
  }
  const auto it = std::max_element(probs.begin(), probs.end());
  return {static_cast<int>(it - probs.begin()), *it, true};
}

double estimate_frequency(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 8) throw LowConfidenceError("estimate_frequency: series shorter than 8 samples");

  Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(series.data(), static_cast<Eigen::Index>(n));
  s.array() -= s.mean();

  Eigen::FFT<double> fft;
  std::vector<double> centered(s.data(), s.data() + n);
  std::vector<cd> spectrum;
  fft.fwd(spectrum, centered);

  const std::size_t last = n / 2;  // highest bin with a distinct positive frequency
  std::vector<double> mag(last + 1);
  for (std::size_t k = 0; k <= last; ++k) mag[k] = std::abs(spectrum[k]);
  std::size_t peak = 1;
  for (std::size_t k = 2; k <= last; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  std::vector<double> rest(mag.begin() + 1, mag.end());
  std::nth_element(rest.begin(), rest.begin() + rest.size() / 2, rest.end());
  const double median = rest[rest.size() / 2];
  if (!(mag[peak] > 0.0) || mag[peak] < 5.0 * median) {
    std::ostringstream msg;
    msg << "estimate_frequency: no dominant tone (peak " << mag[peak] << ", median " << median << ")";
    throw LowConfidenceError(msg.str());
  }

  double offset = 0.0;
  if (peak + 1 <= last && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0) {
    const double a = std::log(mag[peak - 1]);
    const double b = std::log(mag[peak]);
    const double c = std::log(mag[peak + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  const double bin = 2.0 * kPi / static_cast<double>(n);
  const double coarse = bin * (static_cast<double>(peak) + offset);

  const double lo = std::max(coarse - bin, 1e-6);
  const double hi = std::min(coarse + bin, kPi);
  const auto best = boost::math::tools::brent_find_minima(
      [&](double w) { return -fit_energy(s, w); }, lo, hi, std::numeric_limits<double>::digits / 2);
  return best.first;
}

double estimate_alpha_from_series(const std::vector<cd>& overlaps) {
  std::vector<double> re(overlaps.size());
  std::transform(overlaps.begin(), overlaps.end(), re.begin(), [](cd z) { return z.real(); });
  return estimate_frequency(re);
}

void summarize(RunResult& result) {
  const Peak peak = find_t_star(result.probs);
  result.t_star = peak.t_star;
  result.p_star = peak.p_star;
  result.monotone_window = peak.monotone_window;
  try {
    result.alpha_emp = estimate_alpha_from_series(result.overlaps);
  } catch (const LowConfidenceError&) {
    result.alpha_emp.reset();
  }
}

Eigen::MatrixXd dense_unitary(const GridSpec& grid, std::size_t cap) {
  const std::size_t n = grid.vertex_count();
  if (n > cap) {
    throw SizeError("dense_unitary: N = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  Eigen::MatrixXd u(n, n);
  StateVector e(grid);
  for (std::size_t j = 0; j < n; ++j) {
    e.amplitudes().setZero();
    e[j] = 1.0;
    step_in_place(e);
    const auto& a = e.amplitudes();
    if (a.imag().cwiseAbs().maxCoeff() != 0.0) throw NumericalError("dense_unitary: U is not real");
    u.col(static_cast<Eigen::Index>(j)) = a.real();
  }
  return u;
}

DenseSpectrum dense_spectrum(const Eigen::MatrixXd& unitary, const GridSpec& grid, double phase_zero) {
  const Eigen::Index n = unitary.rows();
  if (unitary.cols() != n || static_cast<std::size_t>(n) != grid.vertex_count()) {
    throw ShapeError("dense_spectrum: matrix does not match grid");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(unitary, true);
  if (solver.info() != Eigen::Success) throw NumericalError("dense_spectrum: eigensolver did not converge");

  DenseSpectrum out{.principal_vector = StateVector(grid)};
  out.dimension = static_cast<std::size_t>(n);
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  const Eigen::MatrixXcd uc = unitary.cast<cd>();
  out.max_residual =
      (uc * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal()).colwise().norm().maxCoeff();

  out.eigenphases.resize(static_cast<std::size_t>(n));
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ph = std::arg(out.eigenvalues(i));
    out.eigenphases[static_cast<std::size_t>(i)] = ph;
    if (ph > phase_zero && (best < 0 || ph < std::arg(out.eigenvalues(best)))) best = i;
  }
  std::sort(out.eigenphases.begin(), out.eigenphases.end());
  if (best < 0) throw NumericalError("dense_spectrum: no eigenvalue with positive phase");
  out.principal_alpha = std::arg(out.eigenvalues(best));
  out.principal_vector = StateVector(grid, out.eigenvectors.col(best).normalized());
  return out;
}

BetaPlaneOverlaps beta_plane_overlaps(const DenseSpectrum& spectrum, const GridSpec& grid) {
  const double alpha = spectrum.principal_alpha;
  const auto copies = std::count_if(spectrum.eigenphases.begin(), spectrum.eigenphases.end(),
                                    [&](double ph) { return std::abs(ph - alpha) < kPhaseZero; });
  if (copies != 1) throw NumericalError("beta_plane_overlaps: principal eigenvalue is degenerate");

  const StateVector& psi = spectrum.principal_vector;
  const double norm = psi.norm();
  const StateVector psi0 = uniform_state(grid);
  const cd z0 = inner_product(psi0, psi);
  const cd zw = psi[grid.marked_index()];

  const StateVector bp(grid, (psi.amplitudes() + psi.amplitudes().conjugate()) / (std::sqrt(2.0) * norm));
  const StateVector bm(grid, (psi.amplitudes() - psi.amplitudes().conjugate()) / (std::sqrt(2.0) * norm));

  BetaPlaneOverlaps out;
  out.beta_cross = std::abs(inner_product(bp, bm));
  out.claim1_raw = std::abs(inner_product(psi0, bm));
  out.p_raw = std::norm(bp[grid.marked_index()]);
  // e^{iφ}ψ: ⟨ψ_0|β⁻⟩ = √2 i Im(e^{iφ} z0)/‖ψ‖ and ⟨w|β⁺⟩ = √2 Re(e^{iφ} zw)/‖ψ‖.
  out.claim1_max = std::sqrt(2.0) * std::abs(z0) / norm;
  out.p_max = 2.0 * std::norm(zw) / (norm * norm);
  const cd align = std::polar(1.0, kPi / 2.0 - std::arg(z0));
  const double re = (align * zw).real();
  out.p_aligned = 2.0 * re * re / (norm * norm);
  return out;
}

}  // namespace qwsearch
