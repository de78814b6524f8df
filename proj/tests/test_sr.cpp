#include "doctest.h"
#include "support.hpp"

using namespace srcc;
using namespace testing_support;

namespace {

const Setup& setup_a() {
  static const Setup s(ModelParams::preset_a());
  return s;
}

ModelParams grid(double t_final, std::size_t n, double f0) {
  ModelParams p = ModelParams::preset_a();
  p.t_final = t_final;
  p.n_steps = n;
  p.f0 = f0;
  return p;
}

double state_distance(const SrState& a, const SrState& b) {
  return (a.flat() - b.flat()).cwiseAbs().maxCoeff();
}

Superposition single(int n) {
  return n == 0 ? Superposition::normalized(1.0, {}) : Superposition::normalized(0.0, {{n, 1.0}});
}

}  // namespace

TEST_CASE("flat layout round trip") {
  const SrState s = init_sr(qs3(), setup_a().eom);
  const SrState r = SrState::from_flat(s.flat(), 1.5);
  CHECK(state_distance(s, r) == 0.0);
  CHECK(r.t == 1.5);
  CHECK_THROWS_AS(SrState::from_flat(ComplexVector::Zero(10), 0.0), DimensionMismatch);
}

TEST_CASE("init_sr for the pure ground state") {
  const Setup& s = setup_a();
  const SrState st = init_sr(single(0), s.eom);
  const ComplexVector l0 = s.eom.lam_hat(0);
  CHECK(max_abs(st.x - with_scalar(0.0, s.ground.t_amp.cast<Complex>())) == 0.0);
  CHECK(max_abs(st.x_r - with_scalar(1.0, ComplexVector::Zero(8))) == 0.0);
  CHECK(max_abs(st.lam_l - l0) <= 1e-15);
  CHECK(max_abs(st.lam_lr - l0) <= 1e-15);
}

TEST_CASE("init_sr for QS1") {
  const Setup& s = setup_a();
  const SrState st = init_sr(qs1(), s.eom);
  const double r = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(st.x_r(0) - r) <= 1e-15);
  CHECK(max_abs(st.x_r.tail(8) - r * (s.eom.x_vecs.col(0) + s.eom.x_vecs.col(1))) <= 1e-15);
  CHECK(std::abs(st.lam_l(0) - r) <= 1e-15);
  CHECK(st.lam_lr(0) == Complex(1.0, 0.0));
}

TEST_CASE("lambda_r^E at t = 0 for a single state") {
  const Setup& s = setup_a();
  const ComplexVector lr = lambda_r_excited(single(3), s.eom, 0.0);
  ComplexVector expected = ComplexVector::Zero(8);
  for (int i = 0; i < 8; ++i)
    expected -= s.eom.f_mat(2, i) / (s.eom.omegas(2) + s.eom.omegas(i)) * s.eom.lam_vecs.col(i);
  CHECK(max_abs(lr - expected) <= 1e-16);
}

TEST_CASE("observables at t = 0 reproduce exact expectation values") {
  const Setup& s = setup_a();
  const auto& m = s.model;
  for (const auto& sup : {qs1(), qs2(), qs3(), Superposition::normalized(0.3, {{2, Complex(0.1, 0.5)}, {6, -0.7}})}) {
    const SrState st = init_sr(sup, s.eom);
    const ComplexVector psi = initial_state(s.spectrum, sup);
    CHECK(std::abs(sr_observable(st, ComplexMatrix::Identity(9, 9), m.exc) - 1.0) <= 1e-10);
    CHECK(std::abs(sr_observable(st, m.dipole, m.exc) - psi.dot(m.dipole * psi)) <= 1e-10);
    CHECK(std::abs(sr_observable(st, m.h0, m.exc) - psi.dot(m.h0 * psi)) <= 1e-10);
    const ComplexMatrix na = level_population(m.basis, 'a');
    CHECK(std::abs(sr_observable(st, na, m.exc) - psi.dot(na * psi)) <= 1e-10);
  }
  for (int n = 0; n < 9; ++n)
    CHECK(std::abs(sr_observable(init_sr(single(n), s.eom), m.h0, m.exc) - s.spectrum.energies(n)) <= 1e-8);
}

TEST_CASE("rhs_sr: scalar-only x_r has no body derivative and scalar slots are fixed") {
  const Setup& s = setup_a();
  const auto p = grid(1.0, 10, 0.04);
  const SrState st = init_sr(single(0), s.eom);
  const SrState d = rhs_sr(st, units::fs_to_au(0.5), p, s.model.h0, s.model.dipole, s.model.exc);
  CHECK(max_abs(d.x_r) == 0.0);
  CHECK(d.x(0) == Complex(0.0, 0.0));
  CHECK(d.lam_l(0) == Complex(0.0, 0.0));
  CHECK(d.lam_lr(0) == Complex(0.0, 0.0));
  const SrState q = rhs_sr(init_sr(qs1(), s.eom), units::fs_to_au(2.5), p, s.model.h0, s.model.dipole, s.model.exc);
  CHECK(numerics::all_finite(q.flat()));
}

TEST_CASE("rhs_sr equals the time derivative of the closed-form solution") {
  const Setup& s = setup_a();
  const auto p = grid(50.0, 10, 0.0);
  const double h = 1e-3;
  for (const auto& sup : {qs1(), qs2(), qs3()}) {
    for (double t : {0.0, 137.0, 1500.0}) {
      const ComplexVector fd =
          (analytic_unperturbed(sup, s.eom, t + h).flat() - analytic_unperturbed(sup, s.eom, t - h).flat()) / (2 * h);
      const SrState d = rhs_sr(analytic_unperturbed(sup, s.eom, t), t, p, s.model.h0, s.model.dipole, s.model.exc);
      CHECK((d.flat() - fd).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("closed-form solution at t = 0 equals init_sr; single states rotate as phasors") {
  const Setup& s = setup_a();
  for (const auto& sup : {qs1(), qs2(), qs3()})
    CHECK(state_distance(analytic_unperturbed(sup, s.eom, 0.0), init_sr(sup, s.eom)) <= 1e-14);
  const double t = 321.0;
  for (int n = 1; n < 9; ++n) {
    const SrState a = analytic_unperturbed(single(n), s.eom, t);
    const Complex phase = std::exp(Complex(0.0, -s.eom.omegas(n - 1) * t));
    CHECK(max_abs(a.x_r.tail(8) - s.eom.x_vecs.col(n - 1) * phase) <= 1e-15);
  }
}

TEST_CASE("scalar slots stay constant during propagation") {
  const Setup& s = setup_a();
  const auto p = grid(10.0, 2000, 0.04);
  const SrState st0 = init_sr(qs3(), s.eom);
  const SrTrajectory traj = propagate_sr(st0, p, s.model.h0, s.model.dipole, s.model.exc);
  REQUIRE(traj.states.size() == 2001);
  for (const auto& st : traj.states) {
    CHECK(std::abs(st.x(0) - st0.x(0)) <= 1e-10);
    CHECK(std::abs(st.x_r(0) - st0.x_r(0)) <= 1e-10);
    CHECK(std::abs(st.lam_l(0) - st0.lam_l(0)) <= 1e-10);
    CHECK(std::abs(st.lam_lr(0) - st0.lam_lr(0)) <= 1e-10);
  }
  const SrTrajectory thin = propagate_sr(st0, p, s.model.h0, s.model.dipole, s.model.exc, 500);
  REQUIRE(thin.states.size() == 5);
  CHECK(state_distance(thin.states.back(), traj.states.back()) == 0.0);
}

TEST_CASE("unperturbed propagation converges to the closed form at second order") {
  const Setup& s = setup_a();
  const double t_final = 10.0;
  auto error = [&](std::size_t n) {
    const SrTrajectory traj = propagate_sr(init_sr(qs2(), s.eom), grid(t_final, n, 0.0), s.model.h0,
                                           s.model.dipole, s.model.exc, n);
    return state_distance(traj.states.back(), analytic_unperturbed(qs2(), s.eom, units::fs_to_au(t_final)));
  };
  const double ratio = error(2000) / error(4000);
  CHECK(ratio >= 3.6);
  CHECK(ratio <= 4.4);
}

TEST_CASE("lambda_r diagnostic follows d_J(t)") {
  const Setup& s = setup_a();
  const double t_final = 10.0;
  auto error = [&](std::size_t n) {
    const SrTrajectory traj = propagate_sr(init_lambda_r(qs1(), s.eom), grid(t_final, n, 0.0), s.model.h0,
                                           s.model.dipole, s.model.exc, n);
    const SrState& last = traj.states.back();
    const Superposition sup = qs1();
    const ComplexVector body = last.lam_lr.tail(8) - sup.s * s.ground.lam.cast<Complex>();
    const ComplexVector d = s.eom.x_vecs.transpose() * body;
    return (d - d_coefficients(sup, s.eom, last.t)).cwiseAbs().maxCoeff();
  };
  const double e1 = error(2000), e2 = error(4000);
  CHECK(e1 <= 1e-4);
  CHECK(e1 / e2 >= 3.6);
  CHECK(e1 / e2 <= 4.4);
}

TEST_CASE("projector operators") {
  const Setup& s = setup_a();
  const auto& exc = s.model.exc;
  ComplexMatrix sum = ComplexMatrix::Zero(9, 9);
  for (int i = 0; i < 9; ++i) sum += projector_operator(i, i, s.eom, exc);
  CHECK(max_abs(sum - ComplexMatrix::Identity(9, 9)) <= 1e-8);

  // In the full space P_IJ is |Psi_I><Psi_J|.
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(max_abs(projector_operator(i, j, s.eom, exc) -
                    s.spectrum.states.col(i) * s.spectrum.states.col(j).adjoint()) <= 1e-9);

  // <0|Lambda^I e^{-T} P_IJ e^{T} X^J|0> = 1
  const ComplexMatrix t = excitation_operator(exc, with_scalar(0.0, s.ground.t_amp.cast<Complex>()));
  for (int i = 0; i < 9; ++i) {
    const int j = (i + 3) % 9;
    const ComplexMatrix p = similarity_nilpotent(t, projector_operator(i, j, s.eom, exc));
    const Complex v = (deexcitation_bra(exc, s.eom.lam_hat(i)) * p *
                       excitation_operator(exc, s.eom.x_hat(j)).col(0))(0);
    CHECK(std::abs(v - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(projector_operator(0, 9, s.eom, exc), IndexOutOfRange);
}

TEST_CASE("projector at T = 0 is the reference projector") {
  ModelParams p;
  p.b = p.w0 = p.u0 = 0.0;
  const Setup s(p);
  ComplexMatrix ref = ComplexMatrix::Zero(9, 9);
  ref(0, 0) = 1.0;
  CHECK(max_abs(projector_operator(0, 0, s.eom, s.model.exc) - ref) == 0.0);
}

TEST_CASE("paper-mode projector is the symmetrized exact projector") {
  const Setup& s = setup_a();
  for (auto [i, j] : {std::pair{0, 0}, std::pair{7, 8}, std::pair{2, 5}}) {
    const ComplexMatrix e = projector_operator(i, j, s.eom, s.model.exc);
    const ComplexMatrix pm = projector_operator(i, j, s.eom, s.model.exc, ProjectorMode::paper);
    CHECK(max_abs(pm - pm.adjoint()) == 0.0);
    CHECK(max_abs(pm - 0.5 * (e + e.adjoint())) <= 1e-14);
  }
}

TEST_CASE("QS2 coherence at t = 0 and Hermitian pairing") {
  const Setup& s = setup_a();
  const SrTrajectory traj = propagate_sr(init_sr(qs2(), s.eom), grid(5.0, 500, 0.04), s.model.h0,
                                         s.model.dipole, s.model.exc, 50);
  const TimeSeries p78 = coherence_sr(traj, 7, 8, s.eom, s.model.exc);
  const TimeSeries p87 = coherence_sr(traj, 8, 7, s.eom, s.model.exc);
  CHECK(std::abs(p78.values[0] - Complex(0.0, 0.5)) <= 1e-6);
  for (std::size_t k = 0; k < p78.size(); ++k) CHECK(p78.values[k] == std::conj(p87.values[k]));
  const TimeSeries p77 = probability_sr(traj, 7, s.eom, s.model.exc);
  CHECK(std::abs(p77.values[0] - 0.5) <= 1e-6);
}

TEST_CASE("stationary-state drift is the midpoint amplitude growth") {
  // Each of x_r and lambda_lr grows by (1 + (Omega dt)^4 / 4)^{n/2} per phasor.
  const Setup& s = setup_a();
  const auto p = grid(10.0, 10000, 0.0);
  for (int n : {1, 4, 8}) {
    const SrTrajectory traj = propagate_sr(init_sr(single(n), s.eom), p, s.model.h0, s.model.dipole,
                                           s.model.exc, 100);
    const double w = s.eom.omegas(n - 1) * p.dt_au();
    const double growth = std::pow(1.0 + std::pow(w, 4) / 4.0, static_cast<double>(p.n_steps) / 2.0) - 1.0;
    const double drift = std::abs(probability_sr(traj, n, s.eom, s.model.exc).values.back() - 1.0);
    CHECK(drift == doctest::Approx(2.0 * growth).epsilon(0.02));
    const TimeSeries e = sr_observable(traj, s.model.h0, s.model.exc);
    for (std::size_t k = 0; k < e.size(); ++k)
      CHECK(std::abs(e.values[k] - s.spectrum.energies(n)) <= 2.0 * growth * std::abs(s.spectrum.energies(n)) + 1e-12);
  }
}

TEST_CASE("probabilities are complete and coherences obey Cauchy-Schwarz") {
  const Setup& s = setup_a();
  const SrTrajectory traj = propagate_sr(init_sr(qs1(), s.eom), grid(20.0, 4000, 0.04), s.model.h0,
                                         s.model.dipole, s.model.exc, 40);
  std::vector<TimeSeries> probs;
  for (int i = 0; i < 9; ++i) probs.push_back(probability_sr(traj, i, s.eom, s.model.exc));
  const TimeSeries p01 = coherence_sr(traj, 0, 1, s.eom, s.model.exc);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    double sum = 0.0;
    for (const auto& p : probs) sum += p.values[k].real();
    CHECK(std::abs(sum - 1.0) <= 1e-3);
    CHECK(std::abs(p01.values[k]) <= std::sqrt(std::abs(probs[0].values[k].real() * probs[1].values[k].real())) + 1e-4);
  }
}

TEST_CASE("driven propagation tracks the exact dipole") {
  const Setup& s = setup_a();
  const auto p = grid(10.0, 10000, 0.04);
  const SrTrajectory traj = propagate_sr(init_sr(qs1(), s.eom), p, s.model.h0, s.model.dipole, s.model.exc);
  const WaveTrajectory wt = propagate(initial_state(s.spectrum, qs1()), p, s.model.h0, s.model.dipole);
  const TimeSeries a = sr_observable(traj, s.model.dipole, s.model.exc);
  const TimeSeries b = observable(wt, s.model.dipole);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
  CHECK(worst <= 1e-4);
}
