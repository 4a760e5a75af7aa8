#pragma once

#include <stdexcept>
#include <string>

namespace torilat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (bad dimensions, non-prime q, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Fixed-width integer arithmetic would have wrapped around.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale enumeration limit was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug or a false theorem.
class InvariantError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace torilat
