#pragma once

#include <stdexcept>
#include <string>

namespace raamkit {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RAAMKIT_DEFINE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

RAAMKIT_DEFINE_ERROR(BadVertex);
RAAMKIT_DEFINE_ERROR(InvalidGraph);
RAAMKIT_DEFINE_ERROR(NotAClique);
RAAMKIT_DEFINE_ERROR(GraphMismatch);
RAAMKIT_DEFINE_ERROR(NotDivisible);
RAAMKIT_DEFINE_ERROR(EmptyInput);
RAAMKIT_DEFINE_ERROR(GuardExceeded);
RAAMKIT_DEFINE_ERROR(OracleAmbiguous);
RAAMKIT_DEFINE_ERROR(DimensionMismatch);
RAAMKIT_DEFINE_ERROR(NotSquare);
RAAMKIT_DEFINE_ERROR(NotPropertyP);
RAAMKIT_DEFINE_ERROR(ParseError);
RAAMKIT_DEFINE_ERROR(ValidationError);

#undef RAAMKIT_DEFINE_ERROR

// Norm-level enumeration beyond the configured ball-size guard.
class LevelTooLarge : public GuardExceeded {
 public:
  using GuardExceeded::GuardExceeded;
};

}  // namespace raamkit
