#pragma once

#include <stdexcept>
#include <string>

namespace coxnorm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed group or function file, or a malformed word token.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Caller violated a precondition (index out of range, t <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Ball enumeration would exceed the configured element cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// A floating-point sign or equality test fell inside the tolerance band.
class NumericAmbiguity : public Error {
public:
  using Error::Error;
};

/// Exact integer arithmetic overflowed.
class NumericOverflow : public Error {
public:
  using Error::Error;
};

/// Operands belong to different Coxeter groups.
class ContextMismatch : public Error {
public:
  using Error::Error;
};

/// The dense oracle was asked for a group whose balls never stabilize.
class GroupNotFinite : public Error {
public:
  using Error::Error;
};

/// An iterative solver stopped before reaching its tolerance.
class NonConvergence : public Error {
public:
  NonConvergence(const std::string& what, double last_iterate)
      : Error(what), last_(last_iterate) {}
  double last_iterate() const noexcept { return last_; }

private:
  double last_;
};

/// A mathematical identity that must hold failed; always a bug signal.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace coxnorm
