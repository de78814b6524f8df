#pragma once
// EOM-CC excited states, the F matrix, Y coefficients and the linear/quadratic
// response transition elements.

#include <vector>

#include "srcc/ccgs.hpp"
#include "srcc/model.hpp"
#include "srcc/superposition.hpp"

namespace srcc {

/// Sorted eigenpairs of the Jacobian (unit-norm right vectors).
struct EomCore {
  RealVector omegas;
  ComplexMatrix right;  // columns X^N
  ComplexMatrix left;   // columns Lambda^N, left.col(M)^T right.col(N) = delta
};

enum class EomGauge {
  unit_norm,  // right vectors of unit Euclidean norm, as returned by solve_eom
  physical,   // ||e^T (r0 + X^N)|0>|| = ||e^T|0>||, dominant component real positive
};

struct EomSolution {
  RealVector omegas;       // hartree, ascending
  ComplexMatrix x_vecs;    // 8x8, column N-1 holds X^N
  ComplexMatrix lam_vecs;  // 8x8, column N-1 holds Lambda^N
  ComplexVector r0;        // reference weight of each X^N
  ComplexMatrix f_mat;     // F^{NI}, row N-1, column I-1
  /// coupling[M](J, N) = <Lambda^M [[Hbar, X^J], X^N]>_0 (all zero-based).
  std::vector<ComplexMatrix> coupling;
  ComplexMatrix hbar;      // e^{-T} H0 e^{T}
  GroundSolution ground;

  /// 9-slot amplitudes of X^N; N = 0 is the identity.
  ComplexVector x_hat(int n) const;
  /// 9-slot amplitudes of Lambda^N; N = 0 is L0 = 1 + Lambda.
  ComplexVector lam_hat(int n) const;
};

/// A_{mu nu} = <tau_mu^dagger [Hbar, tau_nu]>_0.
ComplexMatrix jacobian(const GroundSolution& ground, const ComplexMatrix& h0,
                       const ExcitationSet& exc);

/// Eigenpairs of the Jacobian, ascending. Throws ComplexSpectrum if an
/// eigenvalue has |Im| > 1e-8.
EomCore solve_eom(const ComplexMatrix& jac);

/// F^{NI} = sum_{mu nu} <L0 [[Hbar, tau_mu], tau_nu]>_0 X^N_mu X^I_nu.
ComplexMatrix f_matrix(const GroundSolution& ground, const ComplexMatrix& hbar,
                       const ComplexMatrix& x_vecs, const ExcitationSet& exc);

std::vector<ComplexMatrix> coupling_tensor(const ComplexMatrix& hbar, const ComplexMatrix& x_vecs,
                                           const ComplexMatrix& lam_vecs, const ExcitationSet& exc);

/// Rescale lam_vecs so that Lambda^M . X^N = delta_MN, then refresh F and the
/// coupling tensor.
void renormalize(EomSolution& eom, const ExcitationSet& exc);

/// Full EOM pipeline on top of a converged ground state.
EomSolution build_eom(const GroundSolution& ground, const ComplexMatrix& h0,
                      const ExcitationSet& exc, EomGauge gauge = EomGauge::physical);

/// Y_J = sum_{N,I} C_N^* C_I G[N](J, I) / (Omega_N - Omega_J - Omega_I).
ComplexVector y_coefficients(const Superposition& sup, const EomSolution& eom);

/// Transition elements of an operator. me_n0 and me_0n depend on the gauge
/// of the excitation vectors; their products and the diagonal of me_mn do not.
struct MatrixElements {
  ComplexVector me_n0;
  ComplexVector me_0n;
  ComplexMatrix me_mn;
};

MatrixElements matrix_elements(const EomSolution& eom, const ComplexMatrix& a,
                               const ExcitationSet& exc);

/// Denominators smaller than this abort sum-over-states expressions.
inline constexpr double kResonanceTolerance = 1e-8;

}  // namespace srcc
