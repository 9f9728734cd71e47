#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewproj {

// Parameter outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical routine failed to produce a trustworthy value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A root finder was handed an interval without a sign change.
class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Malformed or inconsistent input data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input that violates a documented precondition, such as a negative final
// coordinate where a non-negative signal is required.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

// Two sketches that cannot be combined.
class IncompatibleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace skewproj
