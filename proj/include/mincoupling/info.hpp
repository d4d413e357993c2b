#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "dist.hpp"
#include "numeric.hpp"

namespace mincoupling {

enum class Given { Rows, Columns };

namespace detail {

inline std::vector<double> to_doubles(std::span<const Rational> masses) {
  std::vector<double> out;
  out.reserve(masses.size());
  for (const auto& r : masses) out.push_back(to_double(r));
  return out;
}

}  // namespace detail

// -sum p log p over a normalized vector, 0 log 0 = 0.
inline double entropy_of(std::span<const double> p, LogBase base = kBits) {
  CompensatedSum sum;
  for (double x : p) {
    if (x > 0) sum += -x * std::log(x);
  }
  return std::max(0.0, base.from_nats(sum.value()));
}

// Renyi entropy of a normalized vector; alpha = 1 dispatches to Shannon.
inline double renyi_of(std::span<const double> p, OrderAlpha alpha, LogBase base = kBits) {
  if (alpha.is_shannon()) return entropy_of(p, base);
  if (alpha.is_zero()) {
    const auto support = std::count_if(p.begin(), p.end(), [](double x) { return x > 0; });
    return base.log(static_cast<double>(support));
  }
  if (alpha.is_infinite()) {
    const double mx = *std::max_element(p.begin(), p.end());
    return -base.log(mx);
  }
  // log sum p^a = log1p(sum p (p^(a-1) - 1)) keeps precision near a = 1.
  const double a = alpha.value();
  CompensatedSum excess;
  for (double x : p) {
    if (x > 0) excess += x * std::expm1((a - 1.0) * std::log(x));
  }
  return std::max(0.0, base.from_nats(std::log1p(excess.value()) / (1.0 - a)));
}

inline double shannon_entropy(const Dist& p, LogBase base = kBits) {
  return entropy_of(detail::to_doubles(p.masses()), base);
}

inline double joint_entropy(const Joint& s, LogBase base = kBits) {
  return entropy_of(detail::to_doubles(s.flat()), base);
}

// H(X|Y) when given == Columns, H(Y|X) when given == Rows; direct
// summation of -s log(s / marginal).
inline double conditional_entropy(const Joint& s, Given given, LogBase base = kBits) {
  const auto [p, q] = marginals(s);
  CompensatedSum sum;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const double sij = to_double(s.at(i, j));
      if (sij <= 0) continue;
      const double cond = to_double(given == Given::Columns ? q[j] : p[i]);
      sum += -sij * std::log(sij / cond);
    }
  }
  return std::max(0.0, base.from_nats(sum.value()));
}

inline double mutual_information(const Joint& s, LogBase base = kBits) {
  const auto [p, q] = marginals(s);
  CompensatedSum sum;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (s.at(i, j) <= 0) continue;
      const double sij = to_double(s.at(i, j));
      // The ratio is formed exactly before the logarithm.
      const double ratio = to_double(Rational(s.at(i, j) / (p[i] * q[j])));
      sum += sij * std::log(ratio);
    }
  }
  return std::max(0.0, base.from_nats(sum.value()));
}

// D(P||Q); +inf when P is not absolutely continuous w.r.t. Q.
inline double kl_divergence(const Dist& p, const Dist& q, LogBase base = kBits) {
  if (p.size() != q.size()) throw LengthMismatch(p.size(), q.size());
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) return std::numeric_limits<double>::infinity();
    sum += to_double(p[i]) * std::log(to_double(Rational(p[i] / q[i])));
  }
  return std::max(0.0, base.from_nats(sum.value()));
}

inline double renyi_entropy(const Dist& p, OrderAlpha alpha, LogBase base = kBits) {
  return renyi_of(detail::to_doubles(p.masses()), alpha, base);
}

inline double renyi_entropy(const Joint& s, OrderAlpha alpha, LogBase base = kBits) {
  return renyi_of(detail::to_doubles(s.flat()), alpha, base);
}

// h(x) in bits.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw OutOfRange("binary entropy argument " + std::to_string(x));
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

// Half the l1 distance; the shorter vector is padded with zeros.
inline Rational total_variation(const Dist& p, const Dist& q) {
  const std::size_t n = std::max(p.size(), q.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational pi = i < p.size() ? p[i] : Rational(0);
    const Rational qi = i < q.size() ? q[i] : Rational(0);
    sum += pi > qi ? Rational(pi - qi) : Rational(qi - pi);
  }
  return sum / 2;
}

}  // namespace mincoupling
