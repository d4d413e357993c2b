#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "errors.hpp"

namespace mincoupling {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// Logarithm base b > 1. Defaults to bits.
class LogBase {
 public:
  constexpr LogBase() = default;
  explicit LogBase(double base) : base_(base), ln_base_(std::log(base)) {
    if (!(base > 1.0) || !std::isfinite(base)) throw OutOfRange("log base must be > 1, got " + std::to_string(base));
  }
  double base() const noexcept { return base_; }
  double log(double x) const noexcept { return std::log(x) / ln_base_; }
  // Converts a natural-log quantity into this base.
  double from_nats(double nats) const noexcept { return nats / ln_base_; }

 private:
  double base_ = 2.0;
  double ln_base_ = 0.69314718055994530942;
};

inline const LogBase kBits{};

// Renyi order alpha in [0, inf].
class OrderAlpha {
 public:
  constexpr OrderAlpha() = default;
  explicit OrderAlpha(double value) : value_(value) {
    if (!(value >= 0.0)) throw OutOfRange("alpha must be >= 0, got " + std::to_string(value));
  }
  static OrderAlpha infinity() { return OrderAlpha(std::numeric_limits<double>::infinity()); }
  static OrderAlpha shannon() { return OrderAlpha(1.0); }

  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept { return std::isinf(value_); }
  bool is_shannon() const noexcept { return value_ == 1.0; }
  bool is_zero() const noexcept { return value_ == 0.0; }

 private:
  double value_ = 1.0;
};

// p-norm order in [1, inf].
class PNorm {
 public:
  constexpr PNorm() = default;
  explicit PNorm(double value) : value_(value) {
    if (!(value >= 1.0)) throw InvalidP(value);
  }
  static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept { return std::isinf(value_); }

 private:
  double value_ = 1.0;
};

}  // namespace mincoupling
