#pragma once

#include <stdexcept>
#include <string>

namespace coverfollow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COVERFOLLOW_DEFINE_ERROR(Name)  \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// terrain / world
COVERFOLLOW_DEFINE_ERROR(OutOfBounds);
COVERFOLLOW_DEFINE_ERROR(InvalidSpec);
COVERFOLLOW_DEFINE_ERROR(InvalidZone);
COVERFOLLOW_DEFINE_ERROR(NoValidGoal);

// reward
COVERFOLLOW_DEFINE_ERROR(EmptyHistory);
COVERFOLLOW_DEFINE_ERROR(DegenerateNormalizer);

// dwa
COVERFOLLOW_DEFINE_ERROR(InadmissibleCandidate);
COVERFOLLOW_DEFINE_ERROR(NoAdmissibleVelocity);

// drl
COVERFOLLOW_DEFINE_ERROR(DimensionMismatch);
COVERFOLLOW_DEFINE_ERROR(InsufficientSamples);

// harness
COVERFOLLOW_DEFINE_ERROR(EmptyInput);
COVERFOLLOW_DEFINE_ERROR(ParseError);

#undef COVERFOLLOW_DEFINE_ERROR

}  // namespace coverfollow
