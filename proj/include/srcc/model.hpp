#pragma once
// Three-level / three-electron model in the M_s = +1/2 sector.
//
// Spin orbitals are numbered j_up=0, j_dn=1, i_up=2, i_dn=3, a_up=4, a_dn=5
// and determinants are bit masks over that order. Excitation operators are
// a^dagger_to a_from strings; all signs follow from this ordering.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srcc/numerics.hpp"

namespace srcc {

inline constexpr int kNumSpinOrbitals = 6;
inline constexpr int kNumExcitations = 8;
inline constexpr int kBasisDim = 9;

/// Energies in eV, times in fs, field in atomic units.
struct ModelParams {
  double delta_eps = 1.0;
  double b = 0.1;
  double w0 = 0.2;
  double u0 = 0.2;
  double d0 = 0.5;
  double f0 = 0.04;
  double t_pulse = 5.0;
  double t_final = 50.0;
  std::size_t n_steps = 50000;
  double alpha = 0.0;

  /// Throws InvalidParameter naming the offending field.
  void validate() const;

  double t_pulse_au() const { return units::fs_to_au(t_pulse); }
  double t_final_au() const { return units::fs_to_au(t_final); }
  double dt_au() const { return t_final_au() / static_cast<double>(n_steps); }
  double alpha_hartree() const { return units::ev_to_hartree(alpha); }

  static ModelParams preset_a();
  static ModelParams preset_b();
};

struct Determinant {
  std::uint8_t occupation = 0;

  bool occupied(int orbital) const { return (occupation >> orbital) & 1U; }
  int count() const;
  bool operator==(const Determinant&) const = default;
};

/// Index 0 is the reference {j_up, j_dn, i_up}; index mu is tau_mu|0>.
struct Basis {
  std::vector<Determinant> determinants;

  std::size_t size() const { return determinants.size(); }
  /// Position of a determinant, or -1 if it is not in the sector.
  int index_of(Determinant d) const;
};

/// One a^dagger_to a_from move.
struct Move {
  int from;
  int to;
};

/// Nonzero entry of a signed partial permutation matrix.
struct SparseEntry {
  int row;
  int col;
  double sign;
};

struct ExcitationSet {
  std::vector<ComplexMatrix> taus;                // tau_mu, mu = 1..8 stored at 0..7
  std::vector<std::vector<Move>> moves;           // applied right to left
  std::vector<std::vector<SparseEntry>> entries;  // sparse copy of taus
  std::vector<std::string> labels;

  std::size_t size() const { return taus.size(); }
};

/// Excitation moves in the fixed mu = 1..8 order.
///
/// Singles and doubles are interleaved: the up-spin part ranges over
/// {none, i_up->a_up, j_up->a_up} and the down-spin part over
/// {none, j_dn->i_dn, j_dn->a_dn}, with index 3*down + up. This is the
/// labelling under which the tabulated amplitudes are reproduced.
std::vector<std::vector<Move>> canonical_moves();

/// Apply a^dagger_to a_from. Returns false if the move annihilates the
/// determinant; otherwise updates `det` and multiplies `sign`.
bool apply_move(const Move& move, Determinant& det, double& sign);

Basis build_basis();
ExcitationSet build_excitations(const Basis& basis);

/// Orbital energy of a spin orbital in eV: j = 0, i = delta_eps, a = 2 delta_eps.
double orbital_energy_ev(int orbital, double delta_eps);

/// Delta_mu in hartree: virtual minus occupied orbital energies of each move.
RealVector excitation_gaps(const ModelParams& params, const ExcitationSet& exc);

ComplexMatrix number_operator(const Basis& basis, int orbital);
/// n_up + n_dn of level 'j', 'i' or 'a'.
ComplexMatrix level_population(const Basis& basis, char level);

ComplexMatrix build_h0(const ModelParams& params, const Basis& basis, const ExcitationSet& exc);
ComplexMatrix build_dipole(const ModelParams& params, const ExcitationSet& exc);

/// Rectangular pulse: f0 for 0 < t < t_pulse, else 0. t in atomic units.
double pulse(double t, const ModelParams& params);
ComplexMatrix hamiltonian_at(double t, const ModelParams& params, const ComplexMatrix& h0,
                             const ComplexMatrix& d);

/// scalar * 1 + sum_mu amp[mu] tau_mu for a 9-slot amplitude vector
/// (slot 0 is the scalar).
ComplexMatrix excitation_operator(const ExcitationSet& exc, const ComplexVector& amp);

/// <0| (scalar * 1 + sum_mu amp[mu] tau_mu^dagger), as a row vector. Amplitudes
/// are not conjugated.
Eigen::RowVectorXcd deexcitation_bra(const ExcitationSet& exc, const ComplexVector& amp);

/// e^{-X} a e^{X} for a pure excitation operator X (X^3 = 0, so the series is exact).
ComplexMatrix similarity_nilpotent(const ComplexMatrix& x, const ComplexMatrix& a);

/// row * tau_mu * col using the sparse representation.
Complex sandwich(const ExcitationSet& exc, int mu, const Eigen::RowVectorXcd& row,
                 const ComplexVector& col);

/// Prepend a zero scalar slot to an 8-component body.
ComplexVector with_scalar(Complex scalar, const ComplexVector& body);

/// Everything a scenario needs from the model.
struct Model {
  ModelParams params;
  Basis basis;
  ExcitationSet exc;
  ComplexMatrix h0;
  ComplexMatrix dipole;
};

Model build_model(const ModelParams& params);

}  // namespace srcc
