#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition and was rejected before any work.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (composition closure, Hecke relations, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure did not reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hecke
