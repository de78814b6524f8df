#pragma once
// Ground-state coupled cluster in the complete excitation space, with the
// alpha-regularized stationarization.

#include "srcc/model.hpp"

namespace srcc {

struct GroundSolution {
  RealVector t_amp;          // t_mu, mu = 1..8 at 0..7
  RealVector lam;            // Lambda_mu
  double energy = 0.0;       // <0|e^{-T} H0 e^{T}|0> (stationary value; E0 when alpha = 0)
  double projected_energy = 0.0;  // <(1 + Lambda) e^{-T} H0 e^{T}>_0
  double alpha = 0.0;        // hartree
  double residual_norm = 0.0;
  int iterations = 0;
};

struct GroundOptions {
  double tolerance = 1e-12;
  int max_iterations = 500;
};

/// e^{-T} h0 e^{T} for real amplitudes t.
ComplexMatrix transformed_hamiltonian(const RealVector& t_amp, const ComplexMatrix& h0,
                                      const ExcitationSet& exc);

/// r_mu = <0| tau_mu^dagger e^{-T} H0 e^{T} |0>.
RealVector cc_residual(const RealVector& t_amp, const ComplexMatrix& h0, const ExcitationSet& exc);

/// <(1 + Lambda) e^{-T} [H0, tau_mu] e^{T}>_0 + alpha Lambda_mu.
RealVector lambda_residual(const RealVector& t_amp, const RealVector& lam, const ComplexMatrix& h0,
                           const ExcitationSet& exc, double alpha);

/// Quasi-Newton solve of r_mu + alpha t_mu = 0 with denominators Delta_mu + alpha,
/// then the (linear) Lambda equations.
GroundSolution solve_ground(const ModelParams& params, const ComplexMatrix& h0,
                            const ExcitationSet& exc, const GroundOptions& options = {});

}  // namespace srcc
