#pragma once

#include <stdexcept>
#include <string>

namespace stlab {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (r does not divide p-1, w = 0 for a
// character, malformed coefficient list, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of the underlying theorem fails: degenerate family, bad
// reduction of a specialization.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// The computation is refused because it exceeds a scale limit (naive point
// counting, index tables).
class RefusedError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

// An invariant that must hold unconditionally was violated (Hasse bound,
// exact character-sum bound). Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stlab
