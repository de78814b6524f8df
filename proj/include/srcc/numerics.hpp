#pragma once
// Dense complex linear algebra shared by every module: eigensolvers, the
// matrix exponential, the fixed-step midpoint integrator and a small
// uniformly-gridded time-series record.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "srcc/errors.hpp"

namespace srcc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace units {
// The supplemental reference tables were generated with 1 hartree = 27.211 eV.
inline constexpr double kEvPerHartree = 27.211;
inline constexpr double kAuTimePerFs = 41.341373335183;

constexpr double ev_to_hartree(double ev) { return ev / kEvPerHartree; }
constexpr double hartree_to_ev(double ha) { return ha * kEvPerHartree; }
constexpr double fs_to_au(double fs) { return fs * kAuTimePerFs; }
constexpr double au_to_fs(double au) { return au / kAuTimePerFs; }
}  // namespace units

namespace numerics {

inline constexpr double kHermitianTolerance = 1e-12;

/// max |m - m^dagger| <= 1e-12.
bool is_hermitian(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // orthonormal columns, phase-fixed
};

/// Eigen-decomposition of a Hermitian matrix. Each eigenvector is rotated so
/// that its largest-magnitude component is real and positive.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

struct GeneralEigen {
  ComplexVector values;  // ascending real part
  ComplexMatrix right;   // columns, unit Euclidean norm
  ComplexMatrix left;    // columns; left.col(j)^T * right.col(k) = delta_jk
};

/// Right and left eigenvectors of a (non-defective) square matrix.
///
/// Left vectors satisfy l^T m = lambda l^T (plain transpose, no conjugation),
/// which is the pairing used by the coupled-cluster Jacobian. Right columns
/// are normalized to unit length with the largest component made real and
/// positive, then left vectors are scaled for biorthonormality.
GeneralEigen eig_general(const ComplexMatrix& m);

/// Rescale left vectors so that left_j^T right_j = 1. Throws DefectiveMatrix
/// if a pair is (numerically) orthogonal.
void biorthonormalize(const ComplexMatrix& right, ComplexMatrix& left);

/// Matrix exponential by truncated Taylor series with scaling and squaring.
/// The series stops once the next term has max-norm <= 1e-16, so nilpotent
/// arguments are exponentiated exactly.
ComplexMatrix expm(const ComplexMatrix& m);

/// e^{-x} a e^{+x} with dense exponentials.
ComplexMatrix similarity_transform(const ComplexMatrix& x, const ComplexMatrix& a);

/// e^{-x} a e^{+x} truncated to nested commutators [..[a, x], x..] of the
/// given order.
ComplexMatrix similarity_transform_bch(const ComplexMatrix& x, const ComplexMatrix& a,
                                       int order);

bool all_finite(const ComplexVector& y);

/// One explicit midpoint (RK2) step:
///   y + dt * rhs(t + dt/2, y + dt/2 * rhs(t, y)).
/// Throws NonFiniteState if the result contains NaN or Inf.
template <class Rhs>
ComplexVector midpoint_step(const Rhs& rhs, const ComplexVector& y, double t, double dt) {
  const ComplexVector k1 = rhs(t, y);
  const ComplexVector mid = y + (0.5 * dt) * k1;
  ComplexVector next = y + dt * rhs(t + 0.5 * dt, mid);
  if (!all_finite(next)) throw NonFiniteState("midpoint step produced a non-finite state");
  return next;
}

/// Uniform time grid t_k = k * t_final / n_steps, k = 0..n_steps (atomic units).
std::vector<double> uniform_grid(double t_final, std::size_t n_steps);

}  // namespace numerics

/// Uniformly gridded complex observable record. Times are atomic units.
struct TimeSeries {
  std::vector<double> times;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
};

}  // namespace srcc
