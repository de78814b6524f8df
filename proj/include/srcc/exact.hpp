#pragma once
// Exact reference: eigenstates of H0 and unitary mid-step propagation.

#include <map>
#include <vector>

#include "srcc/model.hpp"
#include "srcc/numerics.hpp"
#include "srcc/superposition.hpp"

namespace srcc {

struct Spectrum {
  RealVector energies;   // hartree, ascending
  ComplexMatrix states;  // eigenvector columns, phase-fixed
};

struct WaveTrajectory {
  std::vector<double> times;          // atomic units
  std::vector<ComplexVector> states;
};

Spectrum diagonalize(const ComplexMatrix& h0);

/// s * Psi_0 + sum_N c_N Psi_N. Renormalized with a warning on stderr if the
/// norm differs from 1 by more than 1e-12.
ComplexVector initial_state(const Spectrum& spec, Complex s, const std::map<int, Complex>& c);
ComplexVector initial_state(const Spectrum& spec, const Superposition& sup);

/// Psi(t + dt) = exp(-i dt H(t + dt/2)) Psi(t) on the grid of `params`.
WaveTrajectory propagate(const ComplexVector& psi0, const ModelParams& params,
                         const ComplexMatrix& h0, const ComplexMatrix& d);

/// <Psi(t)|a|Psi(t)>. For Hermitian a the imaginary residue is checked
/// (<= 1e-12) and dropped.
TimeSeries observable(const WaveTrajectory& traj, const ComplexMatrix& a);

/// C_i(t)^* C_j(t) with C_K(t) = <Psi_K|Psi(t)>.
TimeSeries coherence_exact(const WaveTrajectory& traj, const Spectrum& spec, int i, int j);

}  // namespace srcc
