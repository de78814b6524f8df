#include "srcc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srcc::numerics {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionMismatch(std::string(what) + ": matrix must be square and non-empty");
}

// Index of the dominant component. Near-ties (within 1e-9 relative) resolve
// to the lowest index so that roundoff cannot flip the choice.
Eigen::Index dominant_index(const ComplexVector& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) return i;
  return 0;
}

void fix_phase(ComplexMatrix& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const Complex pivot = vectors(dominant_index(vectors.col(k)), k);
    if (std::abs(pivot) > 0.0) vectors.col(k) *= std::conj(pivot) / std::abs(pivot);
  }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= kHermitianTolerance;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m)) throw NonHermitianInput("eig_hermitian: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eig_hermitian: eigensolver did not converge");

  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phase(out.vectors);
  return out;
}

void biorthonormalize(const ComplexMatrix& right, ComplexMatrix& left) {
  if (right.rows() != left.rows() || right.cols() != left.cols())
    throw DimensionMismatch("biorthonormalize: left/right shapes differ");
  for (Eigen::Index j = 0; j < right.cols(); ++j) {
    const double left_norm = left.col(j).norm();
    const Complex overlap = left.col(j).transpose() * right.col(j);
    if (left_norm == 0.0 || std::abs(overlap) / left_norm < 1e-10)
      throw DefectiveMatrix("biorthonormalize: vanishing left/right overlap for pair " +
                            std::to_string(j));
    left.col(j) /= overlap;
  }
}

GeneralEigen eig_general(const ComplexMatrix& m) {
  require_square(m, "eig_general");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eig_general: eigensolver did not converge");

  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const ComplexVector& raw_values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (raw_values(a).real() != raw_values(b).real())
      return raw_values(a).real() < raw_values(b).real();
    return raw_values(a).imag() < raw_values(b).imag();
  });

  GeneralEigen out;
  out.values.resize(n);
  out.right.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = raw_values(order[static_cast<std::size_t>(k)]);
    out.right.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]).normalized();
  }
  fix_phase(out.right);

  Eigen::FullPivLU<ComplexMatrix> lu(out.right);
  if (!lu.isInvertible())
    throw DefectiveMatrix("eig_general: eigenvectors are linearly dependent");
  // Rows of R^{-1} are left eigenvectors already paired with R.
  out.left = lu.inverse().transpose();
  biorthonormalize(out.right, out.left);
  return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  const Eigen::Index n = m.rows();

  int squarings = 0;
  const double norm = max_abs(m);
  if (norm > 1.0) squarings = static_cast<int>(std::ceil(std::log2(norm))) + 1;
  const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 64; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    if (max_abs(term) <= 1e-16) {
      result += term;
      break;
    }
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

ComplexMatrix similarity_transform(const ComplexMatrix& x, const ComplexMatrix& a) {
  return expm(-x) * a * expm(x);
}

ComplexMatrix similarity_transform_bch(const ComplexMatrix& x, const ComplexMatrix& a,
                                       int order) {
  ComplexMatrix result = a;
  ComplexMatrix term = a;
  for (int k = 1; k <= order; ++k) {
    term = (term * x - x * term) / static_cast<double>(k);
    result += term;
  }
  return result;
}

bool all_finite(const ComplexVector& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (!std::isfinite(y(i).real()) || !std::isfinite(y(i).imag())) return false;
  return true;
}

std::vector<double> uniform_grid(double t_final, std::size_t n_steps) {
  std::vector<double> times(n_steps + 1);
  const double dt = t_final / static_cast<double>(n_steps);
  for (std::size_t k = 0; k <= n_steps; ++k) times[k] = static_cast<double>(k) * dt;
  return times;
}

}  // namespace srcc::numerics
