#include "srcc/exact.hpp"

#include <cmath>
#include <utility>

namespace srcc {

Spectrum diagonalize(const ComplexMatrix& h0) {
  auto eig = numerics::eig_hermitian(h0);
  return Spectrum{std::move(eig.values), std::move(eig.vectors)};
}

ComplexVector initial_state(const Spectrum& spec, const Superposition& sup) {
  ComplexVector psi = sup.s * spec.states.col(0);
  for (const auto& [n, value] : sup.c) psi += value * spec.states.col(n);
  return psi;
}

ComplexVector initial_state(const Spectrum& spec, Complex s, const std::map<int, Complex>& c) {
  return initial_state(spec, Superposition::normalized(s, c));
}

WaveTrajectory propagate(const ComplexVector& psi0, const ModelParams& params,
                         const ComplexMatrix& h0, const ComplexMatrix& d) {
  if (psi0.size() != h0.rows()) throw DimensionMismatch("propagate: state/Hamiltonian size");
  WaveTrajectory traj;
  traj.times = numerics::uniform_grid(params.t_final_au(), params.n_steps);
  traj.states.reserve(traj.times.size());
  traj.states.push_back(psi0);

  const double dt = params.dt_au();
  // The field is piecewise constant, so only a couple of propagators exist.
  std::vector<std::pair<double, ComplexMatrix>> cache;
  auto propagator = [&](double f) -> const ComplexMatrix& {
    for (const auto& entry : cache)
      if (entry.first == f) return entry.second;
    cache.emplace_back(f, numerics::expm(Complex(0.0, -dt) * ComplexMatrix(h0 - f * d)));
    return cache.back().second;
  };

  ComplexVector psi = psi0;
  for (std::size_t k = 0; k < params.n_steps; ++k) {
    const double t_mid = traj.times[k] + 0.5 * dt;
    psi = propagator(pulse(t_mid, params)) * psi;
    if (!numerics::all_finite(psi)) throw NonFiniteState("exact propagation diverged");
    traj.states.push_back(psi);
  }
  return traj;
}

TimeSeries observable(const WaveTrajectory& traj, const ComplexMatrix& a) {
  if (traj.states.empty() || a.rows() != traj.states.front().size() || a.cols() != a.rows())
    throw DimensionMismatch("observable: operator/state size");
  const bool hermitian = numerics::is_hermitian(a);
  TimeSeries out{traj.times, {}};
  out.values.reserve(traj.states.size());
  for (const auto& psi : traj.states) {
    Complex v = psi.dot(a * psi);
    if (hermitian) {
      if (std::abs(v.imag()) > 1e-12)
        throw NonHermitianInput("observable: Hermitian expectation value has imaginary part");
      v = Complex(v.real(), 0.0);
    }
    out.values.push_back(v);
  }
  return out;
}

TimeSeries coherence_exact(const WaveTrajectory& traj, const Spectrum& spec, int i, int j) {
  const int n = static_cast<int>(spec.states.cols());
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw IndexOutOfRange("coherence indices must lie in 0.." + std::to_string(n - 1));
  TimeSeries out{traj.times, {}};
  out.values.reserve(traj.states.size());
  for (const auto& psi : traj.states) {
    const Complex ci = spec.states.col(i).dot(psi);
    const Complex cj = spec.states.col(j).dot(psi);
    out.values.push_back(std::conj(ci) * cj);
  }
  return out;
}

}  // namespace srcc
