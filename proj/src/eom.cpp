#include "srcc/eom.hpp"

#include <cmath>
#include <sstream>

namespace srcc {

namespace {

Eigen::Index idx(int n) { return static_cast<Eigen::Index>(n); }

void check_denominator(double value, int m, int j, int n) {
  if (std::abs(value) < kResonanceTolerance) {
    std::ostringstream msg;
    msg << "near-resonant denominator Omega_" << m << " - Omega_" << j << " - Omega_" << n
        << " = " << value;
    throw NearResonantDenominator(msg.str());
  }
}

}  // namespace

ComplexVector EomSolution::x_hat(int n) const {
  if (n < 0 || n > x_vecs.cols()) throw IndexOutOfRange("x_hat index " + std::to_string(n));
  if (n == 0) return with_scalar(1.0, ComplexVector::Zero(x_vecs.rows()));
  return with_scalar(r0(n - 1), x_vecs.col(n - 1));
}

ComplexVector EomSolution::lam_hat(int n) const {
  if (n < 0 || n > lam_vecs.cols()) throw IndexOutOfRange("lam_hat index " + std::to_string(n));
  if (n == 0) return with_scalar(1.0, ground.lam.cast<Complex>());
  return with_scalar(0.0, lam_vecs.col(n - 1));
}

ComplexMatrix jacobian(const GroundSolution& ground, const ComplexMatrix& h0,
                       const ExcitationSet& exc) {
  const ComplexMatrix hbar = transformed_hamiltonian(ground.t_amp, h0, exc);
  const auto n = idx(static_cast<int>(exc.size()));
  ComplexMatrix jac(n, n);
  for (Eigen::Index nu = 0; nu < n; ++nu) {
    const auto& tau = exc.taus[static_cast<std::size_t>(nu)];
    const ComplexVector comm = hbar * tau.col(0) - tau * hbar.col(0);
    for (Eigen::Index mu = 0; mu < n; ++mu)
      jac(mu, nu) = exc.taus[static_cast<std::size_t>(mu)].col(0).dot(comm);
  }
  return jac;
}

EomCore solve_eom(const ComplexMatrix& jac) {
  const auto eig = numerics::eig_general(jac);
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (std::abs(eig.values(k).imag()) > 1e-8)
      throw ComplexSpectrum("Jacobian eigenvalue " + std::to_string(k + 1) + " is complex");
  return EomCore{eig.values.real(), eig.right, eig.left};
}

ComplexMatrix f_matrix(const GroundSolution& ground, const ComplexMatrix& hbar,
                       const ComplexMatrix& x_vecs, const ExcitationSet& exc) {
  const auto n = idx(static_cast<int>(exc.size()));
  const Eigen::RowVectorXcd l0 = deexcitation_bra(exc, with_scalar(1.0, ground.lam.cast<Complex>()));
  ComplexMatrix f(n, n);
  for (Eigen::Index mu = 0; mu < n; ++mu) {
    const auto& tm = exc.taus[static_cast<std::size_t>(mu)];
    const ComplexMatrix c1 = hbar * tm - tm * hbar;
    for (Eigen::Index nu = 0; nu < n; ++nu) {
      const auto& tn = exc.taus[static_cast<std::size_t>(nu)];
      f(mu, nu) = (l0 * (c1 * tn.col(0) - tn * c1.col(0)))(0);
    }
  }
  return x_vecs.transpose() * f * x_vecs;
}

std::vector<ComplexMatrix> coupling_tensor(const ComplexMatrix& hbar, const ComplexMatrix& x_vecs,
                                           const ComplexMatrix& lam_vecs, const ExcitationSet& exc) {
  const auto n = x_vecs.cols();
  std::vector<ComplexMatrix> xs;
  std::vector<Eigen::RowVectorXcd> bras;
  for (Eigen::Index k = 0; k < n; ++k) {
    xs.push_back(excitation_operator(exc, with_scalar(0.0, x_vecs.col(k))));
    bras.push_back(deexcitation_bra(exc, with_scalar(0.0, lam_vecs.col(k))));
  }
  std::vector<ComplexMatrix> g(static_cast<std::size_t>(n), ComplexMatrix(n, n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const ComplexMatrix c = hbar * xs[j] - xs[j] * hbar;
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexVector col = c * xs[k].col(0) - xs[k] * c.col(0);
      for (Eigen::Index m = 0; m < n; ++m) g[static_cast<std::size_t>(m)](j, k) = (bras[m] * col)(0);
    }
  }
  return g;
}

void renormalize(EomSolution& eom, const ExcitationSet& exc) {
  numerics::biorthonormalize(eom.x_vecs, eom.lam_vecs);
  eom.f_mat = f_matrix(eom.ground, eom.hbar, eom.x_vecs, exc);
  eom.coupling = coupling_tensor(eom.hbar, eom.x_vecs, eom.lam_vecs, exc);
}

EomSolution build_eom(const GroundSolution& ground, const ComplexMatrix& h0,
                      const ExcitationSet& exc, EomGauge gauge) {
  EomSolution eom;
  eom.ground = ground;
  eom.hbar = transformed_hamiltonian(ground.t_amp, h0, exc);
  const EomCore core = solve_eom(jacobian(ground, h0, exc));
  eom.omegas = core.omegas;
  eom.x_vecs = core.right;
  eom.lam_vecs = core.left;

  // Reference weight of the full right eigenvector: r0_N = eta . X^N / Omega_N.
  const auto n = idx(static_cast<int>(exc.size()));
  ComplexVector eta(n);
  for (Eigen::Index mu = 0; mu < n; ++mu)
    eta(mu) = eom.hbar.row(0) * exc.taus[static_cast<std::size_t>(mu)].col(0);
  eom.r0.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(eom.omegas(k)) < kResonanceTolerance)
      throw NearResonantDenominator("zero excitation energy for state " + std::to_string(k + 1));
    eom.r0(k) = (eta.transpose() * eom.x_vecs.col(k))(0) / eom.omegas(k);
  }

  if (gauge == EomGauge::physical) {
    const ComplexMatrix et =
        numerics::expm(excitation_operator(exc, with_scalar(0.0, ground.t_amp.cast<Complex>())));
    const double target = et.col(0).norm();
    for (Eigen::Index k = 0; k < n; ++k) {
      const ComplexVector ket = et * excitation_operator(exc, eom.x_hat(static_cast<int>(k) + 1)).col(0);
      Eigen::Index peak = 0;
      ket.cwiseAbs().maxCoeff(&peak);
      const Complex s = target / ket.norm() * std::conj(ket(peak)) / std::abs(ket(peak));
      eom.x_vecs.col(k) *= s;
      eom.r0(k) *= s;
      eom.lam_vecs.col(k) /= s;
    }
  }
  renormalize(eom, exc);
  return eom;
}

ComplexVector y_coefficients(const Superposition& sup, const EomSolution& eom) {
  const ComplexVector c = sup.coefficients();
  const auto n = eom.omegas.size();
  ComplexVector y = ComplexVector::Zero(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    if (c(m) == Complex(0.0, 0.0)) continue;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (c(k) == Complex(0.0, 0.0)) continue;
      const Complex weight = std::conj(c(m)) * c(k);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double den = eom.omegas(m) - eom.omegas(j) - eom.omegas(k);
        check_denominator(den, static_cast<int>(m) + 1, static_cast<int>(j) + 1,
                          static_cast<int>(k) + 1);
        y(j) += weight * eom.coupling[static_cast<std::size_t>(m)](j, k) / den;
      }
    }
  }
  return y;
}

MatrixElements matrix_elements(const EomSolution& eom, const ComplexMatrix& a,
                               const ExcitationSet& exc) {
  if (a.rows() != eom.hbar.rows() || a.cols() != eom.hbar.cols())
    throw DimensionMismatch("matrix_elements: operator size");
  const auto n = eom.omegas.size();
  const ComplexMatrix abar = similarity_nilpotent(
      excitation_operator(exc, with_scalar(0.0, eom.ground.t_amp.cast<Complex>())), a);
  const Eigen::RowVectorXcd l0 = deexcitation_bra(exc, eom.lam_hat(0));

  MatrixElements me{ComplexVector(n), ComplexVector(n), ComplexMatrix(n, n)};
  std::vector<ComplexVector> comm_cols;  // [Abar, X^N]|0>
  for (Eigen::Index k = 0; k < n; ++k) {
    me.me_n0(k) = (deexcitation_bra(exc, eom.lam_hat(static_cast<int>(k) + 1)) * abar.col(0))(0);
    const ComplexMatrix x = excitation_operator(exc, eom.x_hat(static_cast<int>(k) + 1));
    comm_cols.push_back(abar * x.col(0) - x * abar.col(0));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex v = (l0 * comm_cols[static_cast<std::size_t>(k)])(0);
    for (Eigen::Index j = 0; j < n; ++j)
      v -= eom.f_mat(k, j) / (eom.omegas(j) + eom.omegas(k)) * me.me_n0(j);
    me.me_0n(k) = v;
  }
  const Complex ground_avg = (l0 * abar.col(0))(0);
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::RowVectorXcd lm = deexcitation_bra(exc, eom.lam_hat(static_cast<int>(m) + 1));
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex v = (m == k ? ground_avg : Complex(0.0, 0.0)) +
                  (lm * comm_cols[static_cast<std::size_t>(k)])(0);
      for (Eigen::Index j = 0; j < n; ++j) {
        const double den = eom.omegas(m) - eom.omegas(j) - eom.omegas(k);
        check_denominator(den, static_cast<int>(m) + 1, static_cast<int>(j) + 1,
                          static_cast<int>(k) + 1);
        v += eom.coupling[static_cast<std::size_t>(m)](j, k) / den * me.me_n0(j);
      }
      me.me_mn(m, k) = v;
    }
  }
  return me;
}

}  // namespace srcc
