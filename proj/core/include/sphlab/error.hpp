#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (points, terms, panels, memory) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Operands disagree on dimension, torus side or matrix size.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A numerical identity that must hold exactly failed beyond roundoff.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number of the offending line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sphlab
