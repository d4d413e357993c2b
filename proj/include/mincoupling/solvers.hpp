#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "dist.hpp"
#include "info.hpp"
#include "polytope.hpp"
#include "scaled.hpp"

namespace mincoupling {

enum class Certificate { Exact, Heuristic };

struct CouplingSolution {
  Joint coupling;
  double objective_value;
  Certificate certificate;
  bool vertex;
};

enum class ExactStrategy {
  Auto,            // exhaustive when the spanning-tree count is small, else branch-and-bound
  Exhaustive,      // enumerate_vertices, may raise VertexCapExceeded
  BranchAndBound,  // depth-first search over leaf eliminations
};

struct ExactOptions {
  ExactStrategy strategy = ExactStrategy::Auto;
  std::size_t vertex_cap = kDefaultVertexCap;
  unsigned threads = 1;
  // Auto picks the exhaustive route when a^(b-1) * b^(a-1) is at most this,
  // a and b being the positive support sizes.
  double auto_tree_limit = 5000.0;
};

inline constexpr std::size_t kDefaultChannelBudget = 10'000'000;

// Probability that X != Y under s (indices compared directly).
inline Rational mismatch_probability(const Joint& s) {
  Rational diag = 0;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) diag += s.at(i, i);
  return 1 - diag;
}

// Diagonal min(p_i, q_i); the excess masses are coupled by the normalized
// product of residuals, which never touches the diagonal.
inline CouplingSolution maximal_coupling(const Dist& p, const Dist& q) {
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  auto q_at = [&](std::size_t i) { return i < m ? q[i] : Rational(0); };
  auto p_at = [&](std::size_t j) { return j < n ? p[j] : Rational(0); };
  std::vector<Rational> flat(n * m);
  std::vector<Rational> row_excess(n);
  std::vector<Rational> col_excess(m);
  Rational excess = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational d = std::min(p[i], q_at(i));
    if (i < m) flat[i * m + i] = d;
    row_excess[i] = p[i] - d;
    excess += row_excess[i];
  }
  for (std::size_t j = 0; j < m; ++j) col_excess[j] = q[j] - std::min(q[j], p_at(j));
  if (excess > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (row_excess[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (col_excess[j] == 0) continue;
        flat[i * m + j] += row_excess[i] * col_excess[j] / excess;
      }
    }
  }
  Joint s(n, m, std::move(flat));
  const double mismatch = to_double(mismatch_probability(s));
  return {std::move(s), mismatch, Certificate::Exact, false};
}

namespace detail {

// Per-cell surrogate whose minimization is equivalent to minimizing H_alpha
// at fixed total mass. Values are masses as fractions of one.
class RenyiSurrogate {
 public:
  enum class Kind { Shannon, PowerBelow, PowerAbove, Count, Max };

  explicit RenyiSurrogate(OrderAlpha alpha) : alpha_(alpha.value()) {
    if (alpha.is_shannon()) {
      kind_ = Kind::Shannon;
    } else if (alpha.is_zero()) {
      kind_ = Kind::Count;
    } else if (alpha.is_infinite()) {
      kind_ = Kind::Max;
    } else {
      kind_ = alpha.value() < 1.0 ? Kind::PowerBelow : Kind::PowerAbove;
    }
  }

  Kind kind() const noexcept { return kind_; }
  double empty() const noexcept { return 0.0; }

  double cell(double x) const {
    switch (kind_) {
      case Kind::Shannon:
        return x > 0 ? -x * std::log(x) : 0.0;
      case Kind::PowerBelow:
        return x > 0 ? std::pow(x, alpha_) : 0.0;
      case Kind::PowerAbove:
        return x > 0 ? -std::pow(x, alpha_) : 0.0;
      case Kind::Count:
        return x > 0 ? 1.0 : 0.0;
      case Kind::Max:
        return -x;
    }
    return 0.0;
  }

  double combine(double acc, double cell_value) const {
    return kind_ == Kind::Max ? std::min(acc, cell_value) : acc + cell_value;
  }

  // Lower bound on the surrogate of any completion of residual marginals.
  // Every cell of row i is at most r_i, so the cells of a row cost at least
  // cell(r_i); likewise for columns. For alpha > 1 this reads
  // -min{sum r^a, sum c^a}.
  double residual_bound(std::span<const double> rows, std::span<const double> cols) const {
    auto line_total = [&](std::span<const double> v) {
      double total = 0.0;
      for (double x : v) total += cell(x);
      return total;
    };
    switch (kind_) {
      case Kind::Shannon:
      case Kind::PowerBelow:
      case Kind::PowerAbove:
      case Kind::Count:
        return std::max(line_total(rows), line_total(cols));
      case Kind::Max: {
        const double r = rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
        const double c = cols.empty() ? 0.0 : *std::max_element(cols.begin(), cols.end());
        return -std::min(r, c);
      }
    }
    return 0.0;
  }

  double of(std::span<const double> masses) const {
    if (kind_ == Kind::Max) {
      double acc = 0.0;
      for (double x : masses) acc = std::min(acc, cell(x));
      return acc;
    }
    CompensatedSum sum;
    for (double x : masses) sum += cell(x);
    return sum.value();
  }

 private:
  Kind kind_ = Kind::Shannon;
  double alpha_ = 1.0;
};

inline constexpr double kCompareSlack = 1e-12;

template <class Int>
class BranchAndBound {
 public:
  BranchAndBound(const ScaledMarginals<Int>& margins, RenyiSurrogate surrogate)
      : margins_(margins), surrogate_(surrogate), n_(margins.rows.size()), m_(margins.cols.size()) {}

  void seed(std::vector<Int> dense) {
    std::vector<double> frac;
    for (const auto& v : dense) frac.push_back(ratio(v, margins_.scale));
    best_value_ = surrogate_.of(frac);
    best_ = std::move(dense);
  }

  std::vector<Int> solve() {
    std::vector<Int> rows = margins_.rows;
    std::vector<Int> cols = margins_.cols;
    std::vector<Int> dense(n_ * m_, Int(0));
    search(rows, cols, dense, surrogate_.empty());
    return *best_;
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  void search(std::vector<Int>& rows, std::vector<Int>& cols, std::vector<Int>& dense, double acc) {
    ++nodes_;
    std::vector<double> rf;
    std::vector<double> cf;
    std::vector<std::size_t> ri;
    std::vector<std::size_t> ci;
    for (std::size_t i = 0; i < n_; ++i)
      if (rows[i] > 0) {
        ri.push_back(i);
        rf.push_back(ratio(rows[i], margins_.scale));
      }
    for (std::size_t j = 0; j < m_; ++j)
      if (cols[j] > 0) {
        ci.push_back(j);
        cf.push_back(ratio(cols[j], margins_.scale));
      }
    if (ri.empty()) {
      offer(dense, acc);
      return;
    }
    const double bound = surrogate_.combine(acc, surrogate_.residual_bound(rf, cf));
    if (best_ && bound > best_value_ + kCompareSlack) return;

    std::vector<Int> key;
    key.reserve(n_ + m_);
    key.insert(key.end(), rows.begin(), rows.end());
    key.insert(key.end(), cols.begin(), cols.end());
    if (auto it = seen_.find(key); it != seen_.end()) {
      if (it->second <= acc + kCompareSlack) return;
      it->second = acc;
    } else {
      seen_.emplace(std::move(key), acc);
    }

    // Larger placements first: they reach good incumbents sooner.
    struct Move {
      std::size_t i;
      std::size_t j;
      Int value;
    };
    std::vector<Move> moves;
    for (auto i : ri)
      for (auto j : ci) moves.push_back({i, j, std::min(rows[i], cols[j])});
    std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) { return a.value > b.value; });
    for (const auto& mv : moves) {
      const Int v = mv.value;
      rows[mv.i] -= v;
      cols[mv.j] -= v;
      dense[mv.i * m_ + mv.j] += v;
      search(rows, cols, dense, surrogate_.combine(acc, surrogate_.cell(ratio(v, margins_.scale))));
      dense[mv.i * m_ + mv.j] -= v;
      rows[mv.i] += v;
      cols[mv.j] += v;
    }
  }

  void offer(const std::vector<Int>& dense, double acc) {
    if (!best_ || acc < best_value_ - kCompareSlack ||
        (acc <= best_value_ + kCompareSlack && dense < *best_)) {
      if (!best_ || acc < best_value_) best_value_ = acc;
      best_ = dense;
    }
  }

  const ScaledMarginals<Int>& margins_;
  RenyiSurrogate surrogate_;
  std::size_t n_;
  std::size_t m_;
  std::optional<std::vector<Int>> best_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::map<std::vector<Int>, double> seen_;
  std::size_t nodes_ = 0;
};

// Largest-residual pairing; ties go to the lowest index.
template <class Int>
std::vector<Int> greedy_dense(const ScaledMarginals<Int>& margins) {
  std::vector<Int> rows = margins.rows;
  std::vector<Int> cols = margins.cols;
  const std::size_t m = cols.size();
  std::vector<Int> dense(rows.size() * m, Int(0));
  while (true) {
    const auto i = static_cast<std::size_t>(std::max_element(rows.begin(), rows.end(), std::less<>{}) - rows.begin());
    const auto j = static_cast<std::size_t>(std::max_element(cols.begin(), cols.end(), std::less<>{}) - cols.begin());
    if (rows[i] == 0 || cols[j] == 0) break;
    const Int v = std::min(rows[i], cols[j]);
    dense[i * m + j] += v;
    rows[i] -= v;
    cols[j] -= v;
  }
  return dense;
}

inline double tree_count(std::size_t a, std::size_t b) {
  return std::pow(static_cast<double>(a), static_cast<double>(b) - 1.0) *
         std::pow(static_cast<double>(b), static_cast<double>(a) - 1.0);
}

inline std::vector<double> fractions(const Joint& s) { return detail::to_doubles(s.flat()); }

}  // namespace detail

inline CouplingSolution min_entropy_coupling_greedy(const Dist& p, const Dist& q, LogBase base = kBits) {
  const BigInt scale = detail::common_denominator(p.masses(), q.masses());
  Joint s = detail::dispatch_scale(scale, [&]<class Int>() {
    const auto margins = detail::scale_pair<Int>(p, q, scale);
    return detail::unscale(p.size(), q.size(), detail::greedy_dense(margins), scale);
  });
  const double h = joint_entropy(s, base);
  const bool vertex = is_forest(positive_cells(s), p.size(), q.size());
  return {std::move(s), h, Certificate::Heuristic, vertex};
}

// Global minimizer of H_alpha over C(P,Q). Among minimizers within 1e-12 of
// the surrogate optimum the row-major lexicographically smallest matrix is
// returned (on the branch-and-bound route: smallest among those visited).
inline CouplingSolution min_entropy_coupling_exact(const Dist& p, const Dist& q, OrderAlpha alpha = OrderAlpha::shannon(),
                                                   LogBase base = kBits, const ExactOptions& options = {}) {
  const detail::RenyiSurrogate surrogate(alpha);
  const auto spec = CouplingSpec::both(p, q);
  ExactStrategy strategy = options.strategy;
  if (strategy == ExactStrategy::Auto) {
    strategy = detail::tree_count(p.support_size(), q.support_size()) <= options.auto_tree_limit
                   ? ExactStrategy::Exhaustive
                   : ExactStrategy::BranchAndBound;
  }

  std::optional<Joint> chosen;
  if (strategy == ExactStrategy::Exhaustive) {
    try {
      const auto vertices = enumerate_vertices(spec, options.vertex_cap, options.threads);
      std::vector<double> values;
      values.reserve(vertices.size());
      for (const auto& v : vertices) values.push_back(surrogate.of(detail::fractions(v.joint)));
      const double best = *std::min_element(values.begin(), values.end());
      for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (values[k] <= best + detail::kCompareSlack) {
          chosen = vertices[k].joint;
          break;
        }
      }
    } catch (const VertexCapExceeded&) {
      if (options.strategy == ExactStrategy::Exhaustive) throw;
    }
  }
  if (!chosen) {
    const BigInt scale = detail::common_denominator(p.masses(), q.masses());
    chosen = detail::dispatch_scale(scale, [&]<class Int>() {
      const auto margins = detail::scale_pair<Int>(p, q, scale);
      detail::BranchAndBound<Int> bnb(margins, surrogate);
      bnb.seed(detail::greedy_dense(margins));
      return detail::unscale(p.size(), q.size(), bnb.solve(), scale);
    });
  }
  const double objective = renyi_entropy(*chosen, alpha, base);
  return {std::move(*chosen), objective, Certificate::Exact, true};
}

// Member of C(P,m) maximizing I(X;Y). Only row-deterministic matrices are
// searched; columns are interchangeable, so assignments are restricted
// growth strings and the lexicographically first optimum is kept.
inline CouplingSolution optimal_channel(const Dist& p, std::size_t m, LogBase base = kBits,
                                        std::size_t budget = kDefaultChannelBudget) {
  if (m == 0) throw ZeroLength();
  const auto positive = p.support().indices;
  double work = std::pow(static_cast<double>(m), static_cast<double>(positive.size()));
  if (work > static_cast<double>(budget)) {
    throw BudgetExceeded(std::to_string(m) + "^" + std::to_string(positive.size()) + " assignments > " +
                         std::to_string(budget));
  }
  const BigInt scale = detail::common_denominator(p.masses());
  std::vector<std::size_t> best_assignment = detail::dispatch_scale(scale, [&]<class Int>() {
    const auto weights = detail::scale_masses<Int>(p.masses(), scale);
    const Int total = detail::to_int<Int>(scale);
    const std::size_t k = positive.size();
    std::vector<std::size_t> assignment(k, 0);
    std::vector<std::size_t> best;
    std::vector<Int> sums(m, Int(0));
    double best_h = -1.0;
    bool balanced = false;
    const bool can_balance = total % Int(static_cast<long long>(m)) == 0;
    auto recurse = [&](auto&& self, std::size_t idx, std::size_t used) -> void {
      if (balanced) return;
      if (idx == k) {
        CompensatedSum h;
        for (const auto& s : sums) {
          const double x = detail::ratio(s, total);
          if (x > 0) h += -x * std::log(x);
        }
        if (h.value() > best_h + detail::kCompareSlack) {
          best_h = h.value();
          best = assignment;
        }
        if (can_balance) {
          const Int share = total / Int(static_cast<long long>(m));
          balanced = std::all_of(sums.begin(), sums.end(), [&](const Int& s) { return s == share; });
          if (balanced) best = assignment;
        }
        return;
      }
      const std::size_t limit = std::min(m, used + 1);
      for (std::size_t c = 0; c < limit; ++c) {
        assignment[idx] = c;
        sums[c] += weights[positive[idx]];
        self(self, idx + 1, std::max(used, c + 1));
        sums[c] -= weights[positive[idx]];
        if (balanced) return;
      }
    };
    recurse(recurse, 0, 0);
    return best;
  });
  std::vector<Rational> flat(p.size() * m);
  for (std::size_t k = 0; k < positive.size(); ++k) flat[positive[k] * m + best_assignment[k]] = p[positive[k]];
  Joint s(p.size(), m, std::move(flat));
  const double info = mutual_information(s, base);
  return {std::move(s), info, Certificate::Exact, true};
}

// max over C(P,Q) of I / min{H(P), H(Q)}, attained at the minimum entropy
// coupling. Exactly 1 when that coupling is functional in either direction.
inline double max_dependence(const Dist& p, const Dist& q, LogBase base = kBits, const ExactOptions& options = {}) {
  if (p.support_size() < 2 || q.support_size() < 2) throw DegenerateMarginal();
  const auto mec = min_entropy_coupling_exact(p, q, OrderAlpha::shannon(), base, options);
  if (is_functional(mec.coupling, Direction::YofX) || is_functional(mec.coupling, Direction::XofY)) return 1.0;
  const double denom = std::min(shannon_entropy(p, base), shannon_entropy(q, base));
  return std::clamp(mutual_information(mec.coupling, base) / denom, 0.0, 1.0);
}

}  // namespace mincoupling
