#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsdaudit {

/// Base class for problems caused by user input (files, config, flags).
/// The CLI maps these to exit code 1; anything else is an internal error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based and counts the header row.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// Raised when a statistic needs at least one digit observation and has none.
class EmptyDistributionError : public InputError {
 public:
  EmptyDistributionError()
      : InputError("empty distribution: no values with a first significant digit") {}
};

}  // namespace fsdaudit
