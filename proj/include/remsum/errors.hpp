#pragma once

#include <stdexcept>
#include <string>

namespace remsum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define REMSUM_DEFINE_ERROR(Name, default_message)                  \
  class Name : public Error {                                       \
   public:                                                          \
    Name() : Error(default_message) {}                              \
    explicit Name(const std::string& what) : Error(what) {}         \
  }

// Two quadratic irrationals from different fields Q(sqrt d) were combined.
REMSUM_DEFINE_ERROR(IncompatibleField, "quadratic fields differ");
REMSUM_DEFINE_ERROR(ParseError, "malformed input");
REMSUM_DEFINE_ERROR(DomainError, "argument outside the domain");
REMSUM_DEFINE_ERROR(PeriodNotFound, "period exceeds max_terms");
REMSUM_DEFINE_ERROR(RationalTerminated,
                    "continued fraction terminated before the requested step");
REMSUM_DEFINE_ERROR(NotIrrational, "argument must be irrational");
REMSUM_DEFINE_ERROR(NotNeighbors, "fractions are not Farey neighbours");
REMSUM_DEFINE_ERROR(TooLarge, "enumeration exceeds the size guard");
REMSUM_DEFINE_ERROR(BoundViolated, "bound violated");
REMSUM_DEFINE_ERROR(NotMember, "sample outside the admissible set");
REMSUM_DEFINE_ERROR(PoleAtOne, "zeta has a pole at s = 1");

#undef REMSUM_DEFINE_ERROR

}  // namespace remsum
