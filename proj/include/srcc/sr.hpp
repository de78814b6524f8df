#pragma once
// Second-response propagation of superposition states.
//
// The state holds four 9-slot amplitude vectors (slot 0 is the scalar):
// the ground cluster x, the right derivative x_r, and the left vectors
// lambda_l and lambda_lr. Observables are
//   <lambda_l [A_x, x_r] + lambda_lr A_x>_0,  A_x = e^{-x} A e^{x}.

#include <vector>

#include "srcc/eom.hpp"
#include "srcc/model.hpp"

namespace srcc {

struct SrState {
  ComplexVector x;
  ComplexVector x_r;
  ComplexVector lam_l;
  ComplexVector lam_lr;
  double t = 0.0;

  /// Concatenation x | x_r | lam_l | lam_lr (36 components).
  ComplexVector flat() const;
  static SrState from_flat(const ComplexVector& y, double t);
};

struct SrTrajectory {
  std::vector<double> times;
  std::vector<SrState> states;
};

SrState init_sr(const Superposition& sup, const EomSolution& eom);

/// Time derivative of every block; scalar slots have zero derivative.
SrState rhs_sr(const SrState& state, double t, const ModelParams& params, const ComplexMatrix& h0,
               const ComplexMatrix& d, const ExcitationSet& exc);

/// Fixed-step midpoint integration over the grid of `params`. Every state is
/// stored when `stride` is 1; otherwise every stride-th plus the last.
SrTrajectory propagate_sr(const SrState& state0, const ModelParams& params,
                          const ComplexMatrix& h0, const ComplexMatrix& d,
                          const ExcitationSet& exc, std::size_t stride = 1);

Complex sr_observable(const SrState& state, const ComplexMatrix& a, const ExcitationSet& exc);
TimeSeries sr_observable(const SrTrajectory& traj, const ComplexMatrix& a,
                         const ExcitationSet& exc);

enum class ProjectorMode {
  exact,  // dense similarity transforms
  paper,  // fourth-order truncated transform, then (P + P^dagger)/2
};

/// e^{T} X^I|0><0| Lambda^J e^{-T}; index 0 stands for the ground state.
ComplexMatrix projector_operator(int i, int j, const EomSolution& eom, const ExcitationSet& exc,
                                 ProjectorMode mode = ProjectorMode::exact);

/// p_IJ(t) = (p~_IJ + conj(p~_JI)) / 2 with p~_IJ the SR average of P_IJ.
TimeSeries coherence_sr(const SrTrajectory& traj, int i, int j, const EomSolution& eom,
                        const ExcitationSet& exc, ProjectorMode mode = ProjectorMode::exact);

/// Re p~_II(t).
TimeSeries probability_sr(const SrTrajectory& traj, int i, const EomSolution& eom,
                          const ExcitationSet& exc, ProjectorMode mode = ProjectorMode::exact);

/// Closed-form solution without an external field.
SrState analytic_unperturbed(const Superposition& sup, const EomSolution& eom, double t);

/// lambda_r^E(t) = -sum_{N,J} C_N F^{NJ} Lambda^J e^{-i Omega_N t} / (Omega_N + Omega_J),
/// as an 8-component body.
ComplexVector lambda_r_excited(const Superposition& sup, const EomSolution& eom, double t);

/// Initial state for the diagnostic (lambda, lambda_r) integrator. The
/// lambda_r equation has the same form as the lambda_lr one with (lambda,
/// lambda_r) in place of (lambda_l, lambda_lr), so the result is stored in
/// lam_l = L0 and lam_lr = lambda_r(0) = lambda_r^E(0) + S L0 and propagated
/// with propagate_sr.
SrState init_lambda_r(const Superposition& sup, const EomSolution& eom);

/// d_J(t) = -sum_N C_N F^{NJ} e^{-i Omega_N t} / (Omega_N + Omega_J).
ComplexVector d_coefficients(const Superposition& sup, const EomSolution& eom, double t);

}  // namespace srcc
