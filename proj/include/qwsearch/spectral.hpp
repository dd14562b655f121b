#pragma once

// Staggered Fourier analysis of U_2 = U_o U_e.
//
// For 0 <= k, l < m/2 the four sublattice plane waves
//   ψ_kl^(β)(x, y) = (2/√N) ω^(xk + yl),   β = 2(x mod 2) + (y mod 2),  ω = e^(2πi/m)
// span a subspace invariant under U_2, on which U_2 acts as a 4x4 unitary.
// Its eigenvalues are 1, 1, e^(iθ), e^(-iθ) with cos θ = 2 cos²k̃ cos²l̃ - 1.

#include <Eigen/Core>

#include <complex>
#include <vector>

#include "qwsearch/grid.hpp"
#include "qwsearch/tolerances.hpp"

namespace qwsearch {

struct BlockIndex {
  int k = 0;
  int l = 0;
  friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

struct FourierBlock {
  int side = 0;
  int k = 0;
  int l = 0;
  double k_tilde = 0.0;  // 2πk/m
  double l_tilde = 0.0;
  Eigen::Matrix4cd reduced = Eigen::Matrix4cd::Identity();
  double theta = 0.0;  // principal eigenphase in [0, π]
  int epsilon = 1;     // sign of cos k̃ cos l̃
  double c_plus = 0.0;
  double c_minus = 0.0;
  double c = 0.0;
  bool identity = false;  // (k, l) = (0, 0)

  // Filled by block_eigensystem(). Columns are w^(0), w^(1) (eigenvalue 1),
  // w^(2) (e^{iθ}), w^(3) (e^{-iθ}).
  bool populated = false;
  Eigen::Matrix4cd eigvecs = Eigen::Matrix4cd::Identity();
  Eigen::Vector4cd eigenvalues = Eigen::Vector4cd::Ones();
};

/// Plane wave ψ_kl^(branch), normalized.
StateVector fourier_basis_vector(const GridSpec& grid, int k, int l, int branch);

FourierBlock build_reduced(const GridSpec& grid, int k, int l);

/// Closed-form eigenvectors of the reduced block, with the k = l forms where
/// the generic ones degenerate. Throws NumericalError if a normalization
/// scalar vanishes away from (0, 0).
FourierBlock block_eigensystem(FourierBlock block, const Tolerances& tol = kDefaultTolerances);

/// ⟨00|v_kl^(branch)⟩ for the full-space eigenvector v = Σ_β' w_β' ψ_kl^(β').
std::complex<double> overlap_00(const FourierBlock& block, int branch);

/// v_kl^(branch) materialized on the grid.
StateVector full_eigenvector(const GridSpec& grid, const FourierBlock& block, int branch);

/// conj(ψ_kl^(β)) = σ_β ψ_{k'l'}^(β) with k' = (m/2 - k) mod m/2 and likewise l'.
BlockIndex conjugate_partner(const GridSpec& grid, int k, int l);
Eigen::Vector4d conjugation_signs(int k, int l);

/// Per-block reduced coordinates, row-major over (k, l).
using BlockCoefficients = std::vector<Eigen::Vector4cd>;

/// Σ_kl Σ_β coeffs[kl][β] ψ_kl^(β), in O(N^{3/2}).
StateVector synthesize(const GridSpec& grid, const BlockCoefficients& coeffs);

/// ⟨ψ_kl^(β)|state⟩ for every block, in O(N^{3/2}).
BlockCoefficients staggered_transform(const StateVector& state);

/// ψ_1 = (−i√3|00⟩ + |01⟩ + |10⟩ + |11⟩)/√6, the e^{2πi/3} eigenvector of U_1.
StateVector psi1_vector(const GridSpec& grid);

/// Reduced coordinates of ψ_1 in block (k, l), up to the 2/√N factor.
Eigen::Vector4cd psi1_reduced(const GridSpec& grid, int k, int l);

/// One conjugate pair v₊ = v_kl^(2), v₋ = conj(v₊) with θ ≠ 0.
struct ConjugatePair {
  int k = 0;
  int l = 0;
  double theta = 0.0;
  std::complex<double> a_plus;
  std::complex<double> a_minus;
  std::complex<double> overlap_plus;   // ⟨00|v₊⟩
  std::complex<double> overlap_minus;  // ⟨00|v₋⟩
};

/// ψ_1 = a|ψ'_1⟩ + Σ_j (a_{j,+}|v_{j,+}⟩ + a_{j,-}|v_{j,-}⟩).
///
/// The eigenvalue-1 part a|ψ'_1⟩ is kept only as reduced coordinates and the
/// gauge-free aggregates |a|² and a²⟨ψ'_2|ψ'_1⟩.
struct Psi1Decomposition {
  GridSpec grid;
  double a_sq = 0.0;
  std::complex<double> a2_psi2psi1;
  std::vector<ConjugatePair> pairs;  // row-major over (k, l) != (0, 0)
  std::complex<double> psi1_overlap_00;
  std::complex<double> psi2_overlap_00;
  std::vector<FourierBlock> blocks;  // row-major, populated
  BlockCoefficients unit_part;       // reduced coordinates of a|ψ'_1⟩

  const ConjugatePair& pair(int k, int l) const;
  double completeness() const;
  double theta_min() const;
};

Psi1Decomposition decompose_psi1(const GridSpec& grid, const Tolerances& tol = kDefaultTolerances);

/// a|ψ'_1⟩ as a grid vector.
StateVector unit_component(const Psi1Decomposition& decomp);

}  // namespace qwsearch
