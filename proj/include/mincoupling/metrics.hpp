#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "info.hpp"
#include "solvers.hpp"

namespace mincoupling {

// H(X|Y) and H(Y|X) of one joint.
struct ConditionalPair {
  double x_given_y = 0.0;
  double y_given_x = 0.0;
};

inline ConditionalPair conditional_pair(const Joint& s, LogBase base = kBits) {
  return {conditional_entropy(s, Given::Columns, base), conditional_entropy(s, Given::Rows, base)};
}

inline double p_combine(const ConditionalPair& c, PNorm p) {
  if (p.is_infinite()) return std::max(c.x_given_y, c.y_given_x);
  if (p.value() == 1.0) return c.x_given_y + c.y_given_x;
  return std::pow(std::pow(c.x_given_y, p.value()) + std::pow(c.y_given_x, p.value()), 1.0 / p.value());
}

inline double delta_p(const Joint& s, PNorm p, LogBase base = kBits) { return p_combine(conditional_pair(s, base), p); }

// Conditional entropies at the minimum entropy coupling. Both are
// increasing in H(S) at fixed marginals, so this one coupling minimizes
// every Delta_p simultaneously.
struct LowerDeltaProfile {
  Joint coupling;
  ConditionalPair conditionals;

  double at(PNorm p) const { return p_combine(conditionals, p); }
};

inline LowerDeltaProfile lower_delta_profile(const Dist& p, const Dist& q, LogBase base = kBits,
                                             const ExactOptions& options = {}) {
  auto mec = min_entropy_coupling_exact(p, q, OrderAlpha::shannon(), base, options);
  ConditionalPair c = conditional_pair(mec.coupling, base);
  // Exact zeros whenever the support says so.
  if (is_functional(mec.coupling, Direction::XofY)) c.x_given_y = 0.0;
  if (is_functional(mec.coupling, Direction::YofX)) c.y_given_x = 0.0;
  return {std::move(mec.coupling), c};
}

inline double delta_lower(const Dist& p, const Dist& q, PNorm norm, LogBase base = kBits,
                          const ExactOptions& options = {}) {
  return lower_delta_profile(p, q, base, options).at(norm);
}

struct BoundEntry {
  std::string name;
  double left;
  double right;
  double slack;  // right - left
};

struct BoundReport {
  std::vector<BoundEntry> entries;

  bool holds(double tolerance = 1e-9) const {
    return std::all_of(entries.begin(), entries.end(), [&](const BoundEntry& e) { return e.slack >= -tolerance; });
  }
  const BoundEntry& operator[](const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw OutOfRange("no bound named " + name);
  }
};

// Entropy-difference and Fano-type bounds on the lower distances. The
// binary entropy term is rescaled into `base`, so in bits it is h itself.
inline BoundReport bound_report(const Dist& p, const Dist& q, LogBase base = kBits, const ExactOptions& options = {}) {
  const auto profile = lower_delta_profile(p, q, base, options);
  const double d1 = profile.at(PNorm(1.0));
  const double dinf = profile.at(PNorm::infinity());
  const double entropy_gap = std::abs(shannon_entropy(p, base) - shannon_entropy(q, base));
  const double tv = to_double(total_variation(p, q));
  const double h = binary_entropy(tv) * base.log(2.0);
  const auto sp = static_cast<double>(p.support_size());
  const auto sq = static_cast<double>(q.support_size());
  const double fano1 = tv * base.log(sp * sq) + 2.0 * h;
  const double fano_inf = tv * base.log(std::max(sp, sq)) + h;

  BoundReport report;
  auto add = [&](std::string name, double left, double right) {
    report.entries.push_back({std::move(name), left, right, right - left});
  };
  add("entropy_gap <= delta_1", entropy_gap, d1);
  add("entropy_gap <= delta_inf", entropy_gap, dinf);
  add("delta_inf <= delta_1", dinf, d1);
  add("delta_1 <= fano_1", d1, fano1);
  add("delta_inf <= fano_inf", dinf, fano_inf);
  return report;
}

// The distance from the row marginal P of S to S itself. S is the only
// coupling of P with S, so the first component is Delta_1 of the forced
// joint of X with (X,Y); the second is H(Y|X) of S. They must agree.
inline std::pair<double, double> conditional_entropy_distance_check(const Joint& s, LogBase base = kBits) {
  // Forced joint T: rows are x, columns are the flattened pairs (x', y),
  // T(x, (x', y)) = S(x', y) [x == x'].
  const std::size_t n = s.rows();
  const std::size_t m = s.cols();
  std::vector<Rational> flat(n * n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) flat[i * (n * m) + i * m + j] = s.at(i, j);
  const Joint forced(n, n * m, std::move(flat));
  const double via_forced = delta_p(forced, PNorm(1.0), base);
  return {via_forced, conditional_entropy(s, Given::Rows, base)};
}

}  // namespace mincoupling
