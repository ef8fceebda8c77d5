#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace psdo {

/// Profile text that does not conform to the grammar, or an atom with bad arguments.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by fourier_project when the last retained coefficients are too large.
class TailBoundError : public std::runtime_error {
 public:
  explicit TailBoundError(double bound)
      : std::runtime_error("Fourier tail bound " + format(bound) + " exceeds tolerance; increase L"),
        bound_(bound) {}
  double bound() const noexcept { return bound_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }
  double bound_;
};

/// A symbol-level precondition failed (non-real symbol, missing limit, ...).
class SymbolError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix-level precondition failed (dimension mismatch, non-Hermitian input, ...).
class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace psdo
