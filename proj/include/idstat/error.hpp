#pragma once

#include <stdexcept>
#include <string>

namespace idstat {

// Every library failure derives from Error so the CLI can map classes to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define IDSTAT_DECLARE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

IDSTAT_DECLARE_ERROR(InvalidInput)
IDSTAT_DECLARE_ERROR(CapacityExceeded)
IDSTAT_DECLARE_ERROR(NegativeRadicand)
IDSTAT_DECLARE_ERROR(DivisionByZero)
IDSTAT_DECLARE_ERROR(LengthMismatch)
IDSTAT_DECLARE_ERROR(NoWitness)
IDSTAT_DECLARE_ERROR(RequiresDistinctLevels)
IDSTAT_DECLARE_ERROR(DimensionMismatch)
IDSTAT_DECLARE_ERROR(BasisNotOrthonormal)
IDSTAT_DECLARE_ERROR(ZeroVectorInput)
IDSTAT_DECLARE_ERROR(NotNormalized)
IDSTAT_DECLARE_ERROR(BoseDivergence)
IDSTAT_DECLARE_ERROR(CutoffTooLarge)

#undef IDSTAT_DECLARE_ERROR

}  // namespace idstat
