#include "srcc/ccgs.hpp"

#include <cmath>
#include <string>

namespace srcc {

namespace {

ComplexVector complex_amp(const RealVector& body) {
  return with_scalar(0.0, body.cast<Complex>());
}

double max_abs(const RealVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

ComplexMatrix transformed_hamiltonian(const RealVector& t_amp, const ComplexMatrix& h0,
                                      const ExcitationSet& exc) {
  return similarity_nilpotent(excitation_operator(exc, complex_amp(t_amp)), h0);
}

RealVector cc_residual(const RealVector& t_amp, const ComplexMatrix& h0, const ExcitationSet& exc) {
  const ComplexMatrix hbar = transformed_hamiltonian(t_amp, h0, exc);
  const ComplexVector he0 = hbar.col(0);
  RealVector r(static_cast<Eigen::Index>(exc.size()));
  // <0|tau_mu^dagger = (tau_mu|0>)^dagger
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    r(static_cast<Eigen::Index>(mu)) = exc.taus[mu].col(0).dot(he0).real();
  return r;
}

RealVector lambda_residual(const RealVector& t_amp, const RealVector& lam, const ComplexMatrix& h0,
                           const ExcitationSet& exc, double alpha) {
  const ComplexMatrix hbar = transformed_hamiltonian(t_amp, h0, exc);
  const Eigen::RowVectorXcd l0 = deexcitation_bra(exc, with_scalar(1.0, lam.cast<Complex>()));
  const Eigen::RowVectorXcd l0h = l0 * hbar;
  const ComplexVector he0 = hbar.col(0);
  RealVector out(static_cast<Eigen::Index>(exc.size()));
  const ComplexVector e0 = ComplexVector::Unit(h0.rows(), 0);
  for (int mu = 0; mu < static_cast<int>(exc.size()); ++mu) {
    const Complex v = sandwich(exc, mu, l0h, e0) - sandwich(exc, mu, l0, he0);
    out(mu) = v.real() + alpha * lam(mu);
  }
  return out;
}

GroundSolution solve_ground(const ModelParams& params, const ComplexMatrix& h0,
                            const ExcitationSet& exc, const GroundOptions& options) {
  params.validate();
  const double alpha = params.alpha_hartree();
  const RealVector denom = excitation_gaps(params, exc).array() + alpha;
  for (Eigen::Index mu = 0; mu < denom.size(); ++mu)
    if (std::abs(denom(mu)) < 1e-12)
      throw SingularDenominator("quasi-Newton denominator vanishes for excitation " +
                                std::to_string(mu + 1));

  GroundSolution sol;
  sol.alpha = alpha;
  const auto n = static_cast<Eigen::Index>(exc.size());
  RealVector t = RealVector::Zero(n);
  int it = 0;
  for (;; ++it) {
    const RealVector r = cc_residual(t, h0, exc) + alpha * t;
    sol.residual_norm = max_abs(r);
    if (!std::isfinite(sol.residual_norm))
      throw NoConvergence("amplitude iteration diverged after " + std::to_string(it) + " steps");
    if (sol.residual_norm <= options.tolerance) break;
    if (it == options.max_iterations)
      throw NoConvergence("amplitude equations not converged in " +
                          std::to_string(options.max_iterations) + " iterations (residual " +
                          std::to_string(sol.residual_norm) + ")");
    t -= r.cwiseQuotient(denom);
  }
  sol.t_amp = t;
  sol.iterations = it;

  // The Lambda equations are linear given T:
  // sum_nu Lambda_nu (A_{nu mu} + alpha delta) = -eta_mu with eta_mu = <0|Hbar tau_mu|0>.
  const ComplexMatrix hbar = transformed_hamiltonian(t, h0, exc);
  const ComplexVector e0 = ComplexVector::Unit(h0.rows(), 0);
  const Eigen::RowVectorXcd h0row = hbar.row(0);
  RealVector eta(n);
  Eigen::MatrixXd lhs(n, n);
  for (int mu = 0; mu < n; ++mu) {
    eta(mu) = sandwich(exc, mu, h0row, e0).real();
    for (int nu = 0; nu < n; ++nu) {
      // Row nu of <Lambda| is <0|tau_nu^dagger; contract with [Hbar, tau_mu]|0>.
      const ComplexVector comm = hbar * exc.taus[static_cast<std::size_t>(mu)].col(0) -
                                 exc.taus[static_cast<std::size_t>(mu)] * hbar.col(0);
      const Complex v = exc.taus[static_cast<std::size_t>(nu)].col(0).dot(comm);
      lhs(mu, nu) = v.real() + (mu == nu ? alpha : 0.0);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
  if (!lu.isInvertible()) throw SingularDenominator("Lambda equations are singular");
  sol.lam = lu.solve(-eta);

  const RealVector lres = lambda_residual(t, sol.lam, h0, exc, alpha);
  if (max_abs(lres) > 1e-10)
    throw NoConvergence("Lambda equations residual " + std::to_string(max_abs(lres)));

  sol.energy = hbar(0, 0).real();
  const Eigen::RowVectorXcd l0 = deexcitation_bra(exc, with_scalar(1.0, sol.lam.cast<Complex>()));
  sol.projected_energy = (l0 * hbar.col(0))(0).real();
  return sol;
}

}  // namespace srcc
