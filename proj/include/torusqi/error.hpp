#pragma once

#include <stdexcept>
#include <string>

namespace torusqi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested order lies above a documented support ceiling.
class UnsupportedOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An iteration failed to converge or produced non-finite values.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A sparse-grid term requested a node that was never sampled.
class MissingSample : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace torusqi
