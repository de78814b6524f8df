#pragma once

#include <stdexcept>
#include <string>

namespace srcc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SRCC_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// numerics
SRCC_DEFINE_ERROR(NonHermitianInput);
SRCC_DEFINE_ERROR(ConvergenceFailure);
SRCC_DEFINE_ERROR(DefectiveMatrix);
SRCC_DEFINE_ERROR(NonFiniteState);
SRCC_DEFINE_ERROR(DimensionMismatch);

// model
SRCC_DEFINE_ERROR(InvalidParameter);

// exact / sr
SRCC_DEFINE_ERROR(IndexOutOfRange);
SRCC_DEFINE_ERROR(EmptySuperposition);

// ccgs
SRCC_DEFINE_ERROR(NoConvergence);
SRCC_DEFINE_ERROR(SingularDenominator);

// eom
SRCC_DEFINE_ERROR(NearResonantDenominator);
SRCC_DEFINE_ERROR(ComplexSpectrum);

// cli
SRCC_DEFINE_ERROR(ConfigParse);
SRCC_DEFINE_ERROR(ScenarioFailure);
SRCC_DEFINE_ERROR(GridMismatch);

#undef SRCC_DEFINE_ERROR

}  // namespace srcc
