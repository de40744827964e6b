#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdbscan {

/// Raised for any user-facing validation failure (bad parameters, malformed
/// input files, non-finite values). Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file could not be parsed. Carries the 1-based line number.
class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An internal invariant did not hold. Maps to CLI exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hdbscan
