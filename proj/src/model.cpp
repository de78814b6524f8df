#include "srcc/model.hpp"

#include <bit>
#include <cmath>

namespace srcc {

namespace {

constexpr std::uint8_t kReferenceMask = 0b000111;  // j_up, j_dn, i_up

const char* const kOrbitalNames[kNumSpinOrbitals] = {"j+", "j-", "i+", "i-", "a+", "a-"};

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw InvalidParameter(field + ": " + rule);
}

}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(delta_eps) && delta_eps > 0.0, "delta_eps", "must be > 0");
  require(std::isfinite(b), "b", "must be finite");
  require(std::isfinite(w0), "w0", "must be finite");
  require(std::isfinite(u0), "u0", "must be finite");
  require(std::isfinite(d0), "d0", "must be finite");
  require(std::isfinite(f0), "f0", "must be finite");
  require(std::isfinite(t_pulse) && t_pulse >= 0.0, "t_pulse", "must be >= 0");
  require(std::isfinite(t_final) && t_final > 0.0, "t_final", "must be > 0");
  require(n_steps >= 1, "n_steps", "must be >= 1");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha", "must be >= 0");
}

ModelParams ModelParams::preset_a() { return ModelParams{}; }

ModelParams ModelParams::preset_b() {
  ModelParams p;
  p.b = 0.25;
  p.w0 = 0.5;
  p.u0 = 0.5;
  return p;
}

int Determinant::count() const { return std::popcount(occupation); }

int Basis::index_of(Determinant d) const {
  for (std::size_t k = 0; k < determinants.size(); ++k)
    if (determinants[k] == d) return static_cast<int>(k);
  return -1;
}

std::vector<std::vector<Move>> canonical_moves() {
  const std::vector<std::vector<Move>> up = {{}, {{2, 4}}, {{0, 4}}};
  const std::vector<std::vector<Move>> down = {{}, {{1, 3}}, {{1, 5}}};
  std::vector<std::vector<Move>> out;
  for (int k = 1; k < 9; ++k) {
    std::vector<Move> m = up[static_cast<std::size_t>(k % 3)];
    const auto& dn = down[static_cast<std::size_t>(k / 3)];
    m.insert(m.end(), dn.begin(), dn.end());
    out.push_back(m);
  }
  return out;
}

bool apply_move(const Move& move, Determinant& det, double& sign) {
  std::uint8_t occ = det.occupation;
  if (!((occ >> move.from) & 1U)) return false;
  auto parity = [](std::uint8_t bits, int below) {
    return (std::popcount(static_cast<unsigned>(bits & ((1U << below) - 1U))) & 1) ? -1.0 : 1.0;
  };
  sign *= parity(occ, move.from);
  occ = static_cast<std::uint8_t>(occ & ~(1U << move.from));
  if ((occ >> move.to) & 1U) return false;
  sign *= parity(occ, move.to);
  det.occupation = static_cast<std::uint8_t>(occ | (1U << move.to));
  return true;
}

namespace {

bool apply_string(const std::vector<Move>& moves, Determinant& det, double& sign) {
  for (auto it = moves.rbegin(); it != moves.rend(); ++it)
    if (!apply_move(*it, det, sign)) return false;
  return true;
}

}  // namespace

Basis build_basis() {
  Basis basis;
  const Determinant ref{kReferenceMask};
  basis.determinants.push_back(ref);
  for (const auto& moves : canonical_moves()) {
    Determinant d = ref;
    double sign = 1.0;
    apply_string(moves, d, sign);
    basis.determinants.push_back(d);
  }
  return basis;
}

ExcitationSet build_excitations(const Basis& basis) {
  ExcitationSet exc;
  exc.moves = canonical_moves();
  const int n = static_cast<int>(basis.size());
  for (const auto& moves : exc.moves) {
    ComplexMatrix tau = ComplexMatrix::Zero(n, n);
    std::vector<SparseEntry> entries;
    for (int col = 0; col < n; ++col) {
      Determinant d = basis.determinants[static_cast<std::size_t>(col)];
      double sign = 1.0;
      if (!apply_string(moves, d, sign)) continue;
      const int row = basis.index_of(d);
      if (row < 0) throw DimensionMismatch("excitation leaves the determinant sector");
      tau(row, col) = sign;
      entries.push_back({row, col, sign});
    }
    std::string label;
    for (const auto& m : moves) {
      if (!label.empty()) label += ",";
      label += std::string(kOrbitalNames[m.from]) + ">" + kOrbitalNames[m.to];
    }
    exc.taus.push_back(std::move(tau));
    exc.entries.push_back(std::move(entries));
    exc.labels.push_back(label);
  }
  return exc;
}

double orbital_energy_ev(int orbital, double delta_eps) {
  return static_cast<double>(orbital / 2) * delta_eps;
}

RealVector excitation_gaps(const ModelParams& params, const ExcitationSet& exc) {
  RealVector gaps(static_cast<Eigen::Index>(exc.size()));
  for (std::size_t mu = 0; mu < exc.size(); ++mu) {
    double ev = 0.0;
    for (const auto& m : exc.moves[mu])
      ev += orbital_energy_ev(m.to, params.delta_eps) - orbital_energy_ev(m.from, params.delta_eps);
    gaps(static_cast<Eigen::Index>(mu)) = units::ev_to_hartree(ev);
  }
  return gaps;
}

ComplexMatrix number_operator(const Basis& basis, int orbital) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    m(k, k) = basis.determinants[static_cast<std::size_t>(k)].occupied(orbital) ? 1.0 : 0.0;
  return m;
}

ComplexMatrix level_population(const Basis& basis, char level) {
  int up = 0;
  switch (level) {
    case 'j': up = 0; break;
    case 'i': up = 2; break;
    case 'a': up = 4; break;
    default: throw InvalidParameter(std::string("level must be j, i or a, got '") + level + "'");
  }
  return number_operator(basis, up) + number_operator(basis, up + 1);
}

ComplexMatrix build_h0(const ModelParams& params, const Basis& basis, const ExcitationSet& exc) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int p = 0; p < kNumSpinOrbitals; ++p)
    h += orbital_energy_ev(p, params.delta_eps) * number_operator(basis, p);
  h += params.u0 * (number_operator(basis, 2) * number_operator(basis, 3) +
                    number_operator(basis, 4) * number_operator(basis, 5));
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    if (exc.moves[mu].size() == 1) h += params.b * (exc.taus[mu] + exc.taus[mu].adjoint());
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    for (std::size_t nu = 0; nu < mu; ++nu) w += params.w0 * (exc.taus[mu] * exc.taus[nu]);
  h += w + w.adjoint();
  return h / units::kEvPerHartree;
}

ComplexMatrix build_dipole(const ModelParams& params, const ExcitationSet& exc) {
  const auto n = exc.taus.front().rows();
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    if (exc.moves[mu].size() == 1) d += params.d0 * (exc.taus[mu] + exc.taus[mu].adjoint());
  return d;
}

double pulse(double t, const ModelParams& params) {
  return (t > 0.0 && t < params.t_pulse_au()) ? params.f0 : 0.0;
}

ComplexMatrix hamiltonian_at(double t, const ModelParams& params, const ComplexMatrix& h0,
                             const ComplexMatrix& d) {
  if (h0.rows() != d.rows() || h0.cols() != d.cols())
    throw DimensionMismatch("hamiltonian_at: H0 and D shapes differ");
  const double f = pulse(t, params);
  return f == 0.0 ? h0 : ComplexMatrix(h0 - f * d);
}

ComplexMatrix excitation_operator(const ExcitationSet& exc, const ComplexVector& amp) {
  if (amp.size() != static_cast<Eigen::Index>(exc.size()) + 1)
    throw DimensionMismatch("excitation_operator: expected 9 amplitude slots");
  const auto n = exc.taus.front().rows();
  ComplexMatrix x = amp(0) * ComplexMatrix::Identity(n, n);
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    for (const auto& e : exc.entries[mu])
      x(e.row, e.col) += amp(static_cast<Eigen::Index>(mu) + 1) * e.sign;
  return x;
}

Eigen::RowVectorXcd deexcitation_bra(const ExcitationSet& exc, const ComplexVector& amp) {
  if (amp.size() != static_cast<Eigen::Index>(exc.size()) + 1)
    throw DimensionMismatch("deexcitation_bra: expected 9 amplitude slots");
  // <0| tau_mu^dagger = (tau_mu |0>)^T for real tau.
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(exc.taus.front().cols());
  row(0) = amp(0);
  for (std::size_t mu = 0; mu < exc.size(); ++mu)
    for (const auto& e : exc.entries[mu])
      if (e.col == 0) row(e.row) += amp(static_cast<Eigen::Index>(mu) + 1) * e.sign;
  return row;
}

ComplexMatrix similarity_nilpotent(const ComplexMatrix& x, const ComplexMatrix& a) {
  const auto n = x.rows();
  const ComplexMatrix x2 = 0.5 * (x * x);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return (id - x + x2) * a * (id + x + x2);
}

Complex sandwich(const ExcitationSet& exc, int mu, const Eigen::RowVectorXcd& row,
                 const ComplexVector& col) {
  Complex acc = 0.0;
  for (const auto& e : exc.entries[static_cast<std::size_t>(mu)])
    acc += row(e.row) * e.sign * col(e.col);
  return acc;
}

ComplexVector with_scalar(Complex scalar, const ComplexVector& body) {
  ComplexVector amp(body.size() + 1);
  amp(0) = scalar;
  amp.tail(body.size()) = body;
  return amp;
}

Model build_model(const ModelParams& params) {
  params.validate();
  Model m;
  m.params = params;
  m.basis = build_basis();
  m.exc = build_excitations(m.basis);
  m.h0 = build_h0(params, m.basis, m.exc);
  m.dipole = build_dipole(params, m.exc);
  return m;
}

}  // namespace srcc
