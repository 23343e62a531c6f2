#pragma once

#include <stdexcept>
#include <string>

namespace bricks {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, non-finite entry,
/// unsupported norm, malformed descriptor).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A 2^N enumeration or grid construction was asked to go past its budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed, e.g. a sampled box point beat the
/// sign-vertex maximum.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace bricks
