#pragma once

#include <iostream>
#include <map>
#include <string>

#include "srcc/numerics.hpp"

namespace srcc {

inline void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

/// S Psi_0 + sum_N C_N Psi_N with N in 1..8.
struct Superposition {
  Complex s{0.0, 0.0};
  std::map<int, Complex> c;

  /// C_N as an 8-vector (index N-1).
  ComplexVector coefficients() const;
  double norm() const;

  /// Validates indices, throws EmptySuperposition for an all-zero input, and
  /// rescales (with a warning) if |norm - 1| > tol.
  static Superposition normalized(Complex s, const std::map<int, Complex>& c, double tol = 1e-12);
};

}  // namespace srcc
