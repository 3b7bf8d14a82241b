#pragma once

#include <stdexcept>
#include <string>

namespace robpareto {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown candidate, scenario or builtin name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (bad dimensions, non-finite
/// data, points off the simplex, empty anchor sets, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid generator configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The simplex kernel exceeded its iteration budget.
class SolverStalled : public Error {
 public:
  using Error::Error;
};

/// Every candidate was removed by a feasibility filter.
class EmptyFeasibleSet : public Error {
 public:
  using Error::Error;
};

/// Malformed instance document or command-line specification.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written or renamed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace robpareto
