#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lieheat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the expression parser; `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

/// A total derivative would leave the truncated jet space.
class JetOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidVectorField : public Error {
 public:
  using Error::Error;
};

class UnsupportedCondition : public Error {
 public:
  using Error::Error;
};

class NotScaling : public Error {
 public:
  using Error::Error;
};

class ReductionFailure : public Error {
 public:
  using Error::Error;
};

class UnsupportedExponent : public Error {
 public:
  using Error::Error;
};

class NonphysicalParams : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class StabilityViolation : public Error {
 public:
  using Error::Error;
};

/// Bad grid or run configuration. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace lieheat
