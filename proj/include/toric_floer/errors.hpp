#ifndef TORIC_FLOER_ERRORS_HPP
#define TORIC_FLOER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toric_floer {

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid polytope input.  `line` is 1-based, 0 when the
/// problem is not tied to a line (e.g. unboundedness).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Valid input that violates a geometric precondition (degenerate facet,
/// non-simple polytope, point on the boundary, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for Fano fans (or holonomy-free solutions).
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace toric_floer

#endif  // TORIC_FLOER_ERRORS_HPP
