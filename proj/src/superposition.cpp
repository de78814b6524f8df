#include "srcc/superposition.hpp"

#include <cmath>
#include <sstream>

#include "srcc/model.hpp"

namespace srcc {

ComplexVector Superposition::coefficients() const {
  ComplexVector out = ComplexVector::Zero(kNumExcitations);
  for (const auto& [n, value] : c) out(n - 1) = value;
  return out;
}

double Superposition::norm() const {
  double sum = std::norm(s);
  for (const auto& kv : c) sum += std::norm(kv.second);
  return std::sqrt(sum);
}

Superposition Superposition::normalized(Complex s, const std::map<int, Complex>& c, double tol) {
  Superposition sup{s, {}};
  for (const auto& [n, value] : c) {
    if (n < 1 || n > kNumExcitations)
      throw IndexOutOfRange("superposition index " + std::to_string(n) + " outside 1..8");
    if (value != Complex(0.0, 0.0)) sup.c[n] = value;
  }
  const double nrm = sup.norm();
  if (nrm == 0.0) throw EmptySuperposition("all superposition coefficients are zero");
  if (std::abs(nrm - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "superposition norm " << nrm << " rescaled to 1";
    warn(msg.str());
    sup.s /= nrm;
    for (auto& kv : sup.c) kv.second /= nrm;
  }
  return sup;
}

}  // namespace srcc
