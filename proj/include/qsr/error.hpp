#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsr {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary operation applied to relations or networks of different calculi.
class CalculusMismatch : public Error {
 public:
  CalculusMismatch() : Error("relations belong to different calculi") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. line() is 1-based, 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Both (i,j) and (j,i) were given and are not converses of each other.
class ConverseConflict : public ParseError {
 public:
  using ParseError::ParseError;
};

// The exponential oracle was asked to handle more variables than allowed.
class GuardExceeded : public Error {
 public:
  GuardExceeded(std::size_t n, std::size_t guard)
      : Error("network has " + std::to_string(n) +
              " variables, exceeding the search guard of " + std::to_string(guard) +
              "; restrict the network to a tractable subclass or raise --guard") {}
};

// An operation's input requirement does not hold (membership, all-different, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotAllDifferent : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotDistributive : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The input network (or an operation on it) was found to be unsatisfiable.
class InconsistentNetwork : public Error {
 public:
  using Error::Error;
};

class DegenerateRegion : public Error {
 public:
  using Error::Error;
};

}  // namespace qsr
