#pragma once
// Shared fixtures, reference data and independent oracles for the test suites.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "srcc/ccgs.hpp"
#include "srcc/eom.hpp"
#include "srcc/exact.hpp"
#include "srcc/model.hpp"
#include "srcc/sr.hpp"

namespace testing_support {

using namespace srcc;

// Supplemental tables: exact energies, regularized energies (alpha = 0.5, 4, 8 eV)
// and amplitudes (alpha = 0, 0.5, 4, 8 eV).
inline constexpr std::array<double, 3> kAlphas = {0.5, 4.0, 8.0};

inline constexpr std::array<std::array<double, 4>, 9> kEnergiesA = {{
    {0.03406112, 0.03450364, 0.03567967, 0.03607546},
    {0.07313581, 0.07321405, 0.07338131, 0.07342816},
    {0.08035159, 0.08047917, 0.08070788, 0.08076523},
    {0.10975262, 0.10986812, 0.11009739, 0.11015831},
    {0.10994818, 0.11002712, 0.11016849, 0.11020221},
    {0.11190407, 0.11153361, 0.11076561, 0.11055775},
    {0.15482654, 0.15471626, 0.15449552, 0.15443684},
    {0.15583540, 0.15558061, 0.15493385, 0.15471786},
    {0.19183032, 0.19172308, 0.19141593, 0.19130383},
}};

inline constexpr std::array<std::array<double, 4>, 9> kEnergiesB = {{
    {0.0236728, 0.02523072, 0.03055085, 0.03271333},
    {0.0704724, 0.07096318, 0.07230300, 0.07275556},
    {0.0877195, 0.08833656, 0.09007605, 0.09071326},
    {0.1074657, 0.10792629, 0.10915896, 0.10957066},
    {0.1088416, 0.10907914, 0.10971073, 0.10991757},
    {0.1193940, 0.11809707, 0.11421255, 0.11277842},
    {0.1678397, 0.16744433, 0.16635852, 0.16598905},
    {0.1733486, 0.17234761, 0.16909455, 0.16779473},
    {0.2069911, 0.20632056, 0.20428027, 0.20351289},
}};

inline constexpr std::array<std::array<double, 4>, 8> kAmplitudesA = {{
    {-0.07950747, -0.05601643, -0.01868837, -0.01067200},
    {-0.04329081, -0.03546118, -0.01573367, -0.00964238},
    {-0.06698762, -0.04964707, -0.01797352, -0.01044045},
    {-0.09473071, -0.07728911, -0.03312300, -0.01995302},
    {-0.06063376, -0.05290738, -0.02763888, -0.01782138},
    {-0.04330929, -0.03546662, -0.01573373, -0.00964238},
    {-0.06079416, -0.05299412, -0.02764646, -0.01782314},
    {-0.04665203, -0.04190695, -0.02428942, -0.01636484},
}};

inline constexpr std::array<std::array<double, 4>, 8> kAmplitudesB = {{
    {-0.12821361, -0.10064334, -0.04148473, -0.02494136},
    {-0.08356321, -0.07146805, -0.03567552, -0.02271260},
    {-0.09336382, -0.07877364, -0.03782335, -0.02364346},
    {-0.20069546, -0.17111214, -0.08042701, -0.04931169},
    {-0.12600387, -0.11349122, -0.06485739, -0.04297576},
    {-0.08380465, -0.07156498, -0.03567760, -0.02271279},
    {-0.12667178, -0.11397311, -0.06493685, -0.04299760},
    {-0.10135496, -0.09296701, -0.05748125, -0.03959413},
}};

// Dominant configurations per eigenstate (both presets).
inline const std::array<const char*, 9> kDominantConfigs = {"0",    "1",    "3", "6, 2", "2, 6",
                                                            "4",    "7, 5", "5, 7", "8"};

inline Superposition qs1() {
  const double r = 1.0 / std::sqrt(3.0);
  return Superposition::normalized(r, {{1, r}, {2, r}});
}
inline Superposition qs2() {
  const double r = 1.0 / std::sqrt(2.0);
  return Superposition::normalized(0.0, {{7, r}, {8, Complex(0.0, r)}});
}
inline Superposition qs3() {
  return Superposition::normalized(0.5, {{3, 0.5}, {5, 1.0 / std::sqrt(2.0)}});
}

/// Model + exact spectrum + ground + EOM for one parameter set.
struct Setup {
  Model model;
  Spectrum spectrum;
  GroundSolution ground;
  EomSolution eom;

  explicit Setup(const ModelParams& p)
      : model(build_model(p)),
        spectrum(diagonalize(model.h0)),
        ground(solve_ground(p, model.h0, model.exc)),
        eom(build_eom(ground, model.h0, model.exc)) {}
};

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ComplexMatrix random_hermitian(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

// ---------------------------------------------------------------------------
// Fock-space oracle: Jordan-Wigner matrices on all 64 occupation states,
// built without reference to the determinant basis or the excitation tables.

inline Eigen::MatrixXd fock_annihilator(int p) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(64, 64);
  for (int m = 0; m < 64; ++m) {
    if (!((m >> p) & 1)) continue;
    int below = 0;
    for (int q = 0; q < p; ++q) below += (m >> q) & 1;
    a(m & ~(1 << p), m) = (below % 2) ? -1.0 : 1.0;
  }
  return a;
}

/// a^dagger_to a_from in Fock space.
inline Eigen::MatrixXd fock_hop(int from, int to) {
  return fock_annihilator(to).transpose() * fock_annihilator(from);
}

/// Restrict a Fock operator to the nine determinants of `basis`.
inline ComplexMatrix restrict_to(const Eigen::MatrixXd& op, const Basis& basis) {
  const int n = static_cast<int>(basis.size());
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      out(r, c) = op(basis.determinants[static_cast<std::size_t>(r)].occupation,
                     basis.determinants[static_cast<std::size_t>(c)].occupation);
  return out;
}

/// Hamiltonian assembled in Fock space from creation/annihilation matrices.
inline Eigen::MatrixXd fock_hamiltonian(const ModelParams& p) {
  Eigen::MatrixXd n[6];
  for (int q = 0; q < 6; ++q) n[q] = fock_hop(q, q);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(64, 64);
  const double eps[6] = {0, 0, p.delta_eps, p.delta_eps, 2 * p.delta_eps, 2 * p.delta_eps};
  for (int q = 0; q < 6; ++q) h += eps[q] * n[q];
  h += p.u0 * (n[2] * n[3] + n[4] * n[5]);
  // Spin-conserving single moves out of the reference occupation.
  const Eigen::MatrixXd ia_up = fock_hop(2, 4), ja_up = fock_hop(0, 4);
  const Eigen::MatrixXd ji_dn = fock_hop(1, 3), ja_dn = fock_hop(1, 5);
  const Eigen::MatrixXd singles[4] = {ia_up, ja_up, ji_dn, ja_dn};
  for (const auto& s : singles) h += p.b * (s + s.transpose());
  // Pair terms: every product of an up move with a down move (all other
  // ordered pairs of excitations vanish on this sector).
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(64, 64);
  for (const auto* up : {&ia_up, &ja_up})
    for (const auto* dn : {&ji_dn, &ja_dn}) w += p.w0 * (*up) * (*dn);
  h += w + w.transpose();
  return h / units::kEvPerHartree;
}

}  // namespace testing_support
