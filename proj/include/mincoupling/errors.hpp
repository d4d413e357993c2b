#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mincoupling {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeMass : public Error {
 public:
  explicit NegativeMass(const std::string& what) : Error("negative mass: " + what) {}
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(const std::string& what) : Error("masses do not sum to 1: " + what) {}
};

class ZeroLength : public Error {
 public:
  ZeroLength() : Error("distribution must have at least one entry") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class OutOfRange : public Error {
 public:
  explicit OutOfRange(const std::string& what) : Error("out of range: " + what) {}
};

class InvalidP : public Error {
 public:
  explicit InvalidP(double p) : Error("p-norm order must be >= 1, got " + std::to_string(p)) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant violation: " + what) {}
};

class DegenerateMarginal : public Error {
 public:
  DegenerateMarginal() : Error("marginal is a point mass") {}
};

// Raised when exhaustive work would exceed a configured limit. Both variants
// map to the same CLI exit status.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class VertexCapExceeded : public LimitExceeded {
 public:
  explicit VertexCapExceeded(std::size_t count_so_far)
      : LimitExceeded("vertex cap exceeded after " + std::to_string(count_so_far) + " vertices"),
        count_so_far_(count_so_far) {}
  std::size_t count_so_far() const noexcept { return count_so_far_; }

 private:
  std::size_t count_so_far_;
};

class BudgetExceeded : public LimitExceeded {
 public:
  explicit BudgetExceeded(const std::string& what) : LimitExceeded("budget exceeded: " + what) {}
};

}  // namespace mincoupling
