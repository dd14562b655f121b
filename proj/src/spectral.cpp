#include "qwsearch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qwsearch/errors.hpp"

namespace qwsearch {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// ω^e for integer e, reduced mod m before taking the phase.
cd omega_pow(int side, long long e) {
  const long long r = ((e % side) + side) % side;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / side);
}

void check_block_index(const GridSpec& grid, int k, int l) {
  const int half = grid.half_side();
  if (k < 0 || l < 0 || k >= half || l >= half) {
    throw BoundsError("block index (" + std::to_string(k) + "," + std::to_string(l) +
                      ") outside [0, m/2)");
  }
}

void check_branch(int branch) {
  if (branch < 0 || branch > 3) throw BoundsError("branch must be in 0..3");
}

std::size_t block_slot(const GridSpec& grid, int k, int l) {
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(grid.half_side()) +
         static_cast<std::size_t>(l);
}

// (√(c − a), √(c + a)) given (c − a)(c + a) = prod, without cancellation.
std::pair<double, double> sqrt_pair(double c, double a, double prod) {
  if (a >= 0.0) {
    const double hi = c + a;
    return {std::sqrt(std::max(prod / hi, 0.0)), std::sqrt(hi)};
  }
  const double hi = c - a;
  return {std::sqrt(hi), std::sqrt(std::max(prod / hi, 0.0))};
}

}  // namespace

StateVector fourier_basis_vector(const GridSpec& grid, int k, int l, int branch) {
  check_block_index(grid, k, l);
  check_branch(branch);
  const int m = grid.side();
  const double amp = 2.0 / static_cast<double>(m);
  StateVector v(grid);
  for (int x = branch >> 1; x < m; x += 2) {
    for (int y = branch & 1; y < m; y += 2) {
      v[grid.index(x, y)] = amp * omega_pow(m, static_cast<long long>(x) * k +
                                                   static_cast<long long>(y) * l);
    }
  }
  return v;
}

FourierBlock build_reduced(const GridSpec& grid, int k, int l) {
  check_block_index(grid, k, l);
  const int m = grid.side();
  FourierBlock b;
  b.side = m;
  b.k = k;
  b.l = l;
  b.k_tilde = 2.0 * kPi * k / m;
  b.l_tilde = 2.0 * kPi * l / m;
  b.identity = (k == 0 && l == 0);

  // Within one cell the even reflection maps ψ^(β) to ½ Σ_β' ω^{(a-a')k + (b-b')l} ψ^(β') - ψ^(β)
  // where β = (a, b). Odd cells are shifted by (1, 1), which conjugates the phases.
  Eigen::Vector4cd u;
  for (int beta = 0; beta < 4; ++beta) u(beta) = omega_pow(m, -((beta >> 1) * k + (beta & 1) * l));
  const Eigen::Matrix4cd ue = 0.5 * u * u.adjoint() - Eigen::Matrix4cd::Identity();
  const Eigen::Vector4cd uc = u.conjugate();
  const Eigen::Matrix4cd uo = 0.5 * uc * uc.adjoint() - Eigen::Matrix4cd::Identity();
  b.reduced = uo * ue;

  const double cc = std::cos(b.k_tilde) * std::cos(b.l_tilde);
  b.theta = std::acos(std::clamp(2.0 * cc * cc - 1.0, -1.0, 1.0));
  b.epsilon = cc < 0.0 ? -1 : 1;
  const double cdiff = std::cos(b.k_tilde - b.l_tilde);
  b.c_plus = std::sqrt(std::max((1.0 + cc) * (1.0 - cdiff), 0.0));
  b.c_minus = std::sqrt(std::max((1.0 - cc) * (1.0 + cdiff), 0.0));
  b.c = std::sqrt(std::max(1.0 - cc * cc, 0.0));
  return b;
}

FourierBlock block_eigensystem(FourierBlock b, const Tolerances& tol) {
  b.populated = true;
  if (b.identity) {
    b.eigvecs.setIdentity();
    b.eigenvalues.setOnes();
    return b;
  }

  const double ck = std::cos(b.k_tilde), sk = std::sin(b.k_tilde);
  const double cl = std::cos(b.l_tilde), sl = std::sin(b.l_tilde);
  const double eps = b.epsilon;
  const bool diagonal = (b.k == b.l);

  if (b.c < tol.degenerate_norm || b.c_minus < tol.degenerate_norm ||
      (!diagonal && b.c_plus < tol.degenerate_norm)) {
    throw NumericalError("degenerate eigenvector normalization in block (" +
                         std::to_string(b.k) + "," + std::to_string(b.l) + ")");
  }

  Eigen::Vector4d w0, w1;
  if (diagonal) {
    w0 << 1.0, -ck, -ck, 1.0;
    w0 /= std::sqrt(2.0 * (1.0 + ck * ck));
    w1 << 0.0, 1.0, -1.0, 0.0;
    w1 /= std::sqrt(2.0);
  } else {
    const double sdiff = std::sin(b.k_tilde - b.l_tilde);
    w0 << sdiff, sl - sk, sl - sk, sdiff;
    w0 /= 2.0 * b.c_plus;
    w1 << -sdiff, sk + sl, -sk - sl, sdiff;
    w1 /= 2.0 * b.c_minus;
  }

  // (c − ε sk cl)(c + ε sk cl) = sl², (c − ε ck sl)(c + ε ck sl) = sk².
  const auto [am, ap] = sqrt_pair(b.c, eps * sk * cl, sl * sl);
  const auto [bm, bp] = sqrt_pair(b.c, eps * ck * sl, sk * sk);
  Eigen::Vector4d w2;
  w2 << -eps * am * bm, am * bp, ap * bm, eps * ap * bp;
  w2 /= 2.0 * b.c;
  // Negating ε swaps (am, ap) and (bm, bp), which reverses the entries.
  const Eigen::Vector4d w3 = w2.reverse();

  b.eigvecs.col(0) = w0.cast<cd>();
  b.eigvecs.col(1) = w1.cast<cd>();
  b.eigvecs.col(2) = w2.cast<cd>();
  b.eigvecs.col(3) = w3.cast<cd>();
  b.eigenvalues << 1.0, 1.0, std::polar(1.0, b.theta), std::polar(1.0, -b.theta);
  return b;
}

std::complex<double> overlap_00(const FourierBlock& b, int branch) {
  check_branch(branch);
  if (!b.populated) throw std::logic_error("overlap_00 needs a populated block");
  const double root_n = static_cast<double>(b.side);
  if (b.identity) return branch == 0 ? cd(2.0 / root_n) : cd(0.0);
  const double ck = std::cos(b.k_tilde);
  switch (branch) {
    case 0:
      if (b.k == b.l) return std::sqrt(2.0) / (root_n * std::sqrt(1.0 + ck * ck));
      return std::sin(b.k_tilde - b.l_tilde) / (b.c_plus * root_n);
    case 1:
      if (b.k == b.l) return 0.0;
      return std::sin(b.l_tilde - b.k_tilde) / (b.c_minus * root_n);
    default:
      // Only ψ^(0) touches the origin, with amplitude 2/√N.
      return 2.0 / root_n * b.eigvecs(0, branch);
  }
}

StateVector full_eigenvector(const GridSpec& grid, const FourierBlock& block, int branch) {
  check_branch(branch);
  if (!block.populated) throw std::logic_error("full_eigenvector needs a populated block");
  BlockCoefficients coeffs(static_cast<std::size_t>(grid.half_side() * grid.half_side()),
                           Eigen::Vector4cd::Zero());
  coeffs[block_slot(grid, block.k, block.l)] = block.eigvecs.col(branch);
  return synthesize(grid, coeffs);
}

BlockIndex conjugate_partner(const GridSpec& grid, int k, int l) {
  const int half = grid.half_side();
  return {(half - k) % half, (half - l) % half};
}

Eigen::Vector4d conjugation_signs(int k, int l) {
  const double sk = k != 0 ? -1.0 : 1.0;
  const double sl = l != 0 ? -1.0 : 1.0;
  return {1.0, sl, sk, sk * sl};
}

StateVector synthesize(const GridSpec& grid, const BlockCoefficients& coeffs) {
  const int m = grid.side();
  const int half = grid.half_side();
  if (coeffs.size() != static_cast<std::size_t>(half * half)) {
    throw ShapeError("synthesize: expected one coefficient vector per block");
  }
  // phase(x, k) = ω^{xk}
  Eigen::MatrixXcd phase(m, half);
  for (int x = 0; x < m; ++x)
    for (int k = 0; k < half; ++k) phase(x, k) = omega_pow(m, static_cast<long long>(x) * k);

  StateVector out(grid);
  const double amp = 2.0 / static_cast<double>(m);
  Eigen::MatrixXcd c(half, half), partial(half, half);
  for (int branch = 0; branch < 4; ++branch) {
    const int px = branch >> 1, py = branch & 1;
    for (int k = 0; k < half; ++k)
      for (int l = 0; l < half; ++l) c(k, l) = coeffs[block_slot(grid, k, l)][branch];
    // partial(k, j) = Σ_l c(k, l) ω^{(2j+py) l}
    for (int j = 0; j < half; ++j) {
      const int y = 2 * j + py;
      partial.col(j) = c * phase.row(y).transpose();
    }
    for (int i = 0; i < half; ++i) {
      const int x = 2 * i + px;
      const Eigen::RowVectorXcd row = phase.row(x) * partial;
      for (int j = 0; j < half; ++j) out[grid.index(x, 2 * j + py)] = amp * row(j);
    }
  }
  return out;
}

BlockCoefficients staggered_transform(const StateVector& state) {
  const GridSpec& grid = state.grid();
  const int m = grid.side();
  const int half = grid.half_side();
  Eigen::MatrixXcd phase(m, half);
  for (int x = 0; x < m; ++x)
    for (int k = 0; k < half; ++k) phase(x, k) = std::conj(omega_pow(m, static_cast<long long>(x) * k));

  BlockCoefficients out(static_cast<std::size_t>(half * half), Eigen::Vector4cd::Zero());
  const double amp = 2.0 / static_cast<double>(m);
  Eigen::MatrixXcd v(half, half);
  for (int branch = 0; branch < 4; ++branch) {
    const int px = branch >> 1, py = branch & 1;
    for (int i = 0; i < half; ++i)
      for (int j = 0; j < half; ++j) v(i, j) = state[grid.index(2 * i + px, 2 * j + py)];
    Eigen::MatrixXcd rows(half, half), cols(half, half);
    for (int i = 0; i < half; ++i) rows.row(i) = phase.row(2 * i + px);
    for (int j = 0; j < half; ++j) cols.row(j) = phase.row(2 * j + py);
    // result(k, l) = Σ_ij conj(ω^{xk}) v(i, j) conj(ω^{yl})
    const Eigen::MatrixXcd result = rows.transpose() * v * cols;
    for (int k = 0; k < half; ++k)
      for (int l = 0; l < half; ++l) out[block_slot(grid, k, l)][branch] = amp * result(k, l);
  }
  return out;
}

StateVector psi1_vector(const GridSpec& grid) {
  require_marked_origin(grid);
  const double s = 1.0 / std::sqrt(6.0);
  StateVector v(grid);
  v[grid.index(0, 0)] = cd(0.0, -std::sqrt(3.0) * s);
  v[grid.index(0, 1)] += s;
  v[grid.index(1, 0)] += s;
  v[grid.index(1, 1)] += s;
  return v;
}

Eigen::Vector4cd psi1_reduced(const GridSpec& grid, int k, int l) {
  check_block_index(grid, k, l);
  const int m = grid.side();
  const double s = 1.0 / std::sqrt(6.0);
  return {cd(0.0, -std::sqrt(3.0) * s), s * omega_pow(m, -l), s * omega_pow(m, -k),
          s * omega_pow(m, -(k + l))};
}

const ConjugatePair& Psi1Decomposition::pair(int k, int l) const {
  if (k == 0 && l == 0) throw std::invalid_argument("block (0,0) has no conjugate pair");
  const std::size_t slot = block_slot(grid, k, l);
  return pairs.at(slot - 1);
}

double Psi1Decomposition::completeness() const {
  double total = a_sq;
  for (const auto& p : pairs) total += std::norm(p.a_plus) + std::norm(p.a_minus);
  return total;
}

double Psi1Decomposition::theta_min() const {
  double t = kPi;
  for (const auto& p : pairs) t = std::min(t, p.theta);
  return t;
}

Psi1Decomposition decompose_psi1(const GridSpec& grid, const Tolerances& tol) {
  require_analytic(grid);
  require_marked_origin(grid);
  const int half = grid.half_side();
  const double scale = 2.0 / static_cast<double>(grid.side());

  Psi1Decomposition d{.grid = grid};
  d.blocks.reserve(static_cast<std::size_t>(half * half));
  d.unit_part.reserve(static_cast<std::size_t>(half * half));
  d.pairs.reserve(static_cast<std::size_t>(half * half - 1));

  for (int k = 0; k < half; ++k) {
    for (int l = 0; l < half; ++l) {
      FourierBlock b = block_eigensystem(build_reduced(grid, k, l), tol);
      const Eigen::Vector4cd red = psi1_reduced(grid, k, l);
      const Eigen::Vector4cd coef = scale * (b.eigvecs.adjoint() * red);
      if (b.identity) {
        // All four directions of the (0,0) block have eigenvalue 1.
        d.unit_part.push_back(b.eigvecs * coef);
        d.a_sq += coef.squaredNorm();
      } else {
        d.unit_part.push_back(b.eigvecs.leftCols<2>() * coef.head<2>());
        d.a_sq += coef.head<2>().squaredNorm();

        const BlockIndex partner = conjugate_partner(grid, k, l);
        const Eigen::Vector4d sigma = conjugation_signs(k, l);
        const Eigen::Vector4cd red_partner = psi1_reduced(grid, partner.k, partner.l);
        ConjugatePair p;
        p.k = k;
        p.l = l;
        p.theta = b.theta;
        p.a_plus = coef(2);
        // v₋ = conj(v₊) = Σ_β conj(w_β) σ_β ψ_{k'l'}^(β)
        p.a_minus = scale * (b.eigvecs.col(2).conjugate().cwiseProduct(sigma.cast<cd>()))
                                .dot(red_partner);
        p.overlap_plus = overlap_00(b, 2);
        p.overlap_minus = std::conj(p.overlap_plus);
        d.pairs.push_back(p);
      }
      d.blocks.push_back(std::move(b));
    }
  }

  // a²⟨ψ'_2|ψ'_1⟩ = Σ_i (a ψ'_1)_i², using (ψ_kl^(β))ᵀ ψ_{k'l'}^(β) = σ_β.
  cd bilinear = 0.0;
  for (int k = 0; k < half; ++k) {
    for (int l = 0; l < half; ++l) {
      const BlockIndex partner = conjugate_partner(grid, k, l);
      const Eigen::Vector4cd& r = d.unit_part[block_slot(grid, k, l)];
      const Eigen::Vector4cd& rp = d.unit_part[block_slot(grid, partner.k, partner.l)];
      const Eigen::Vector4d sigma = conjugation_signs(k, l);
      for (int beta = 0; beta < 4; ++beta) bilinear += sigma(beta) * r(beta) * rp(beta);
    }
  }
  d.a2_psi2psi1 = bilinear;

  d.psi1_overlap_00 = cd(0.0, -1.0 / std::sqrt(2.0));
  d.psi2_overlap_00 = std::conj(d.psi1_overlap_00);
  return d;
}

StateVector unit_component(const Psi1Decomposition& decomp) {
  return synthesize(decomp.grid, decomp.unit_part);
}

}  // namespace qwsearch
