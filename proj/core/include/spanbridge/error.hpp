#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spanbridge {

// Base for every error the toolkit throws on bad input or broken contracts.
// Data-level projection problems are statuses, not exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or string. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message : message + " at line " + std::to_string(line)),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value violates a domain invariant (span bounds, overlap, labels ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Source text already contains characters the chosen marker scheme uses.
class PreexistingMarkerError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition (length mismatch, token mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spanbridge
