#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hom {

/// Root of the library's exception hierarchy. The CLI maps the three direct
/// subclasses onto exit codes (I/O = 1, validation = 2, numerical = 3).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A wavepacket model does not fit inside the requested time grid.
class TruncationError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class GridMismatchError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// The truncated Fock space cannot represent the requested state.
class BudgetError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Malformed input file content, with the offending 1-based line.
class ParseError : public ValidationError {
  public:
    ParseError(const std::string& what, std::size_t line)
        : ValidationError(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class NumericalError : public Error {
  public:
    using Error::Error;
};

}  // namespace hom
