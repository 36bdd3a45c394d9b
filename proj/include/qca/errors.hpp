#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qca {

/// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions in an algebraic operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An input document or literal could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration or construction would exceed a configured bound.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Construction-time invariant violation (bad automaton data).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qca
