#include "srcc/sr.hpp"

#include <cmath>

namespace srcc {

namespace {

constexpr Eigen::Index kSlots = kBasisDim;

ComplexVector body_only(const ComplexVector& amp) {
  ComplexVector out = amp;
  out(0) = 0.0;
  return out;
}

Complex projection(const ExcitationSet& exc, int mu, const ComplexVector& v) {
  // <0|tau_mu^dagger v> for real tau.
  Complex acc = 0.0;
  for (const auto& e : exc.entries[static_cast<std::size_t>(mu)])
    if (e.col == 0) acc += e.sign * v(e.row);
  return acc;
}

ComplexMatrix ground_cluster(const EomSolution& eom, const ExcitationSet& exc) {
  return excitation_operator(exc, with_scalar(0.0, eom.ground.t_amp.cast<Complex>()));
}

void check_state(const SrState& s) {
  if (s.x.size() != kSlots || s.x_r.size() != kSlots || s.lam_l.size() != kSlots ||
      s.lam_lr.size() != kSlots)
    throw DimensionMismatch("SR state blocks must have 9 slots");
}

}  // namespace

ComplexVector SrState::flat() const {
  ComplexVector y(4 * kSlots);
  y << x, x_r, lam_l, lam_lr;
  return y;
}

SrState SrState::from_flat(const ComplexVector& y, double t) {
  if (y.size() != 4 * kSlots) throw DimensionMismatch("SR flat state must have 36 components");
  return SrState{y.segment(0, kSlots), y.segment(kSlots, kSlots), y.segment(2 * kSlots, kSlots),
                 y.segment(3 * kSlots, kSlots), t};
}

ComplexVector lambda_r_excited(const Superposition& sup, const EomSolution& eom, double t) {
  const ComplexVector c = sup.coefficients();
  const auto n = eom.omegas.size();
  ComplexVector out = ComplexVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (c(k) == Complex(0.0, 0.0)) continue;
    const Complex phase = c(k) * std::exp(Complex(0.0, -eom.omegas(k) * t));
    for (Eigen::Index j = 0; j < n; ++j) {
      const double den = eom.omegas(k) + eom.omegas(j);
      if (std::abs(den) < kResonanceTolerance)
        throw NearResonantDenominator("vanishing Omega_N + Omega_J");
      out -= phase * eom.f_mat(k, j) / den * eom.lam_vecs.col(j);
    }
  }
  return out;
}

ComplexVector d_coefficients(const Superposition& sup, const EomSolution& eom, double t) {
  return eom.x_vecs.transpose() * lambda_r_excited(sup, eom, t);
}

SrState init_sr(const Superposition& sup, const EomSolution& eom) {
  const ComplexVector c = sup.coefficients();
  const ComplexVector lam = eom.ground.lam.cast<Complex>();
  const ComplexVector lam_l_exc = eom.lam_vecs * c.conjugate();

  SrState s;
  s.x = with_scalar(0.0, eom.ground.t_amp.cast<Complex>());
  s.x_r = with_scalar(sup.s, eom.x_vecs * c);
  s.lam_l = with_scalar(std::conj(sup.s), std::conj(sup.s) * lam + lam_l_exc);
  const ComplexVector y = y_coefficients(sup, eom);
  s.lam_lr = with_scalar(1.0, eom.lam_vecs * y + sup.s * lam_l_exc + lam +
                                  std::conj(sup.s) * lambda_r_excited(sup, eom, 0.0));
  s.t = 0.0;
  return s;
}

SrState init_lambda_r(const Superposition& sup, const EomSolution& eom) {
  const ComplexVector lam = eom.ground.lam.cast<Complex>();
  SrState s;
  s.x = with_scalar(0.0, eom.ground.t_amp.cast<Complex>());
  s.x_r = with_scalar(sup.s, eom.x_vecs * sup.coefficients());
  s.lam_l = with_scalar(1.0, lam);
  s.lam_lr = with_scalar(sup.s, lambda_r_excited(sup, eom, 0.0) + sup.s * lam);
  return s;
}

SrState rhs_sr(const SrState& state, double t, const ModelParams& params, const ComplexMatrix& h0,
               const ComplexMatrix& d, const ExcitationSet& exc) {
  check_state(state);
  const ComplexMatrix hbar =
      similarity_nilpotent(excitation_operator(exc, body_only(state.x)), hamiltonian_at(t, params, h0, d));
  // Scalar parts drop out of every commutator, so they are removed up front.
  const ComplexMatrix xr = excitation_operator(exc, body_only(state.x_r));
  const Eigen::RowVectorXcd ll = deexcitation_bra(exc, state.lam_l);
  const Eigen::RowVectorXcd llr = deexcitation_bra(exc, state.lam_lr);

  const auto n = hbar.rows();
  const ComplexVector e0 = ComplexVector::Unit(n, 0);
  const ComplexVector v = hbar.col(0);
  const ComplexVector u = xr.col(0);
  const ComplexVector w = hbar * u;
  const ComplexVector cr = w - xr * v;  // [Hbar, x_r]|0>
  const Eigen::RowVectorXcd ll_h = ll * hbar;
  const Eigen::RowVectorXcd llr_h = llr * hbar;
  const Eigen::RowVectorXcd ll_x = ll * xr;
  const Eigen::RowVectorXcd ll_xh = ll_x * hbar;

  SrState out{ComplexVector::Zero(kSlots), ComplexVector::Zero(kSlots),
              ComplexVector::Zero(kSlots), ComplexVector::Zero(kSlots), t};
  for (int mu = 0; mu < static_cast<int>(exc.size()); ++mu) {
    const auto k = static_cast<Eigen::Index>(mu) + 1;
    out.x(k) = -kI * projection(exc, mu, v);
    out.x_r(k) = -kI * projection(exc, mu, cr);
    // <l [Hbar, tau]>_0
    const Complex l_comm = sandwich(exc, mu, ll_h, e0) - sandwich(exc, mu, ll, v);
    out.lam_l(k) = kI * l_comm;
    const Complex lr_comm = sandwich(exc, mu, llr_h, e0) - sandwich(exc, mu, llr, v);
    // <l [[Hbar, tau], x_r]>_0 expanded with tau x_r = x_r tau.
    const Complex cross = sandwich(exc, mu, ll_h, u) - sandwich(exc, mu, ll, w) -
                          sandwich(exc, mu, ll_xh, e0) + sandwich(exc, mu, ll_x, v);
    out.lam_lr(k) = kI * (lr_comm + cross);
  }
  return out;
}

SrTrajectory propagate_sr(const SrState& state0, const ModelParams& params,
                          const ComplexMatrix& h0, const ComplexMatrix& d,
                          const ExcitationSet& exc, std::size_t stride) {
  check_state(state0);
  if (stride == 0) stride = 1;
  const auto grid = numerics::uniform_grid(params.t_final_au(), params.n_steps);
  const double dt = params.dt_au();
  auto rhs = [&](double t, const ComplexVector& y) {
    return rhs_sr(SrState::from_flat(y, t), t, params, h0, d, exc).flat();
  };

  SrTrajectory traj;
  traj.times.push_back(grid[0]);
  traj.states.push_back(SrState::from_flat(state0.flat(), grid[0]));
  ComplexVector y = state0.flat();
  for (std::size_t k = 0; k < params.n_steps; ++k) {
    y = numerics::midpoint_step(rhs, y, grid[k], dt);
    if ((k + 1) % stride == 0 || k + 1 == params.n_steps) {
      traj.times.push_back(grid[k + 1]);
      traj.states.push_back(SrState::from_flat(y, grid[k + 1]));
    }
  }
  return traj;
}

Complex sr_observable(const SrState& state, const ComplexMatrix& a, const ExcitationSet& exc) {
  check_state(state);
  if (a.rows() != kSlots || a.cols() != kSlots)
    throw DimensionMismatch("sr_observable: operator must be 9x9");
  const ComplexMatrix abar = similarity_nilpotent(excitation_operator(exc, body_only(state.x)), a);
  const ComplexMatrix xr = excitation_operator(exc, body_only(state.x_r));
  const ComplexVector ae0 = abar.col(0);
  const ComplexVector comm = abar * xr.col(0) - xr * ae0;
  return (deexcitation_bra(exc, state.lam_l) * comm)(0) +
         (deexcitation_bra(exc, state.lam_lr) * ae0)(0);
}

TimeSeries sr_observable(const SrTrajectory& traj, const ComplexMatrix& a,
                         const ExcitationSet& exc) {
  TimeSeries out{traj.times, {}};
  out.values.reserve(traj.states.size());
  for (const auto& s : traj.states) out.values.push_back(sr_observable(s, a, exc));
  return out;
}

ComplexMatrix projector_operator(int i, int j, const EomSolution& eom, const ExcitationSet& exc,
                                 ProjectorMode mode) {
  const int n = static_cast<int>(eom.omegas.size());
  if (i < 0 || j < 0 || i > n || j > n)
    throw IndexOutOfRange("projector indices must lie in 0.." + std::to_string(n));
  const ComplexVector ket = excitation_operator(exc, eom.x_hat(i)).col(0);
  const Eigen::RowVectorXcd bra = deexcitation_bra(exc, eom.lam_hat(j));
  const ComplexMatrix core = ket * bra;
  const ComplexMatrix t = ground_cluster(eom, exc);
  if (mode == ProjectorMode::exact) return similarity_nilpotent(-t, core);
  const ComplexMatrix p = numerics::similarity_transform_bch(-t, core, 4);
  return 0.5 * (p + p.adjoint());
}

TimeSeries coherence_sr(const SrTrajectory& traj, int i, int j, const EomSolution& eom,
                        const ExcitationSet& exc, ProjectorMode mode) {
  const ComplexMatrix pij = projector_operator(i, j, eom, exc, mode);
  const ComplexMatrix pji = projector_operator(j, i, eom, exc, mode);
  TimeSeries out{traj.times, {}};
  out.values.reserve(traj.states.size());
  for (const auto& s : traj.states)
    out.values.push_back(0.5 * (sr_observable(s, pij, exc) + std::conj(sr_observable(s, pji, exc))));
  return out;
}

TimeSeries probability_sr(const SrTrajectory& traj, int i, const EomSolution& eom,
                          const ExcitationSet& exc, ProjectorMode mode) {
  const ComplexMatrix p = projector_operator(i, i, eom, exc, mode);
  TimeSeries out{traj.times, {}};
  out.values.reserve(traj.states.size());
  for (const auto& s : traj.states) out.values.push_back(Complex(sr_observable(s, p, exc).real(), 0.0));
  return out;
}

SrState analytic_unperturbed(const Superposition& sup, const EomSolution& eom, double t) {
  const auto n = eom.omegas.size();
  const ComplexVector c = sup.coefficients();
  ComplexVector phased(n);
  for (Eigen::Index k = 0; k < n; ++k) phased(k) = c(k) * std::exp(Complex(0.0, -eom.omegas(k) * t));
  const ComplexVector lam = eom.ground.lam.cast<Complex>();
  const ComplexVector lam_l_exc = eom.lam_vecs * phased.conjugate();

  ComplexVector y = ComplexVector::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    if (c(m) == Complex(0.0, 0.0)) continue;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (c(k) == Complex(0.0, 0.0)) continue;
      const Complex weight = std::conj(phased(m)) * phased(k);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double den = eom.omegas(m) - eom.omegas(j) - eom.omegas(k);
        if (std::abs(den) < kResonanceTolerance)
          throw NearResonantDenominator("near-resonant denominator in y_J(t)");
        y(j) += weight * eom.coupling[static_cast<std::size_t>(m)](j, k) / den;
      }
    }
  }

  SrState s;
  s.t = t;
  s.x = with_scalar(0.0, eom.ground.t_amp.cast<Complex>());
  s.x_r = with_scalar(sup.s, eom.x_vecs * phased);
  s.lam_l = with_scalar(std::conj(sup.s), std::conj(sup.s) * lam + lam_l_exc);
  s.lam_lr = with_scalar(1.0, eom.lam_vecs * y + sup.s * lam_l_exc + lam +
                                  std::conj(sup.s) * lambda_r_excited(sup, eom, t));
  return s;
}

}  // namespace srcc
