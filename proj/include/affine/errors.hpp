#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affine {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (term grammar, algebra files). Carries the byte
// offset of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

// Structurally invalid data: bad tables, unknown symbols, arity mismatches,
// out-of-range elements, invalid builtin parameters.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A computation exceeded its configured size or work budget.
class BudgetError : public Error {
public:
  using Error::Error;
};

}  // namespace affine
