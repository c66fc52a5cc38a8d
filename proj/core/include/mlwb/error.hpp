#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlwb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text. `position` is a 0-based offset into the parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates a structural invariant (unknown world,
// missing valuation entry, non-expanding domains, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// Raised by brute-force procedures whose enumeration would exceed the budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A query on a lazily truncated structure fell outside the materialized part.
class BoundsExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mlwb
