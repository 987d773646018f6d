#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace approx {

// Base of every error thrown by the library. The CLI maps the subclasses
// onto exit codes (usage/precondition = 2, resource guard = 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands that live in different rings.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// Asked to enumerate an infinite ring.
class NotEnumerable : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed a configured guard. Never silently
// truncated.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        message_(what),
        position_(position) {}
  std::size_t position() const { return position_; }
  /// The message without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

// Input violates the precondition of an operation. `cause` is a short stable
// tag ("not-subgroup", "improper", "not-approx-ideal", ...).
class PreconditionError : public Error {
 public:
  PreconditionError(std::string cause, const std::string& what)
      : Error(cause + ": " + what), cause_(std::move(cause)) {}
  const std::string& cause() const { return cause_; }

 private:
  std::string cause_;
};

// Sampling and tolerance closures only answer membership queries.
class ClosureNotSetValued : public Error {
 public:
  using Error::Error;
};

// The ring/closure combination has no implemented decision procedure.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace approx
