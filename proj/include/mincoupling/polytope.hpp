#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <variant>
#include <vector>

#include "dist.hpp"
#include "errors.hpp"
#include "scaled.hpp"

namespace mincoupling {

inline constexpr std::size_t kDefaultVertexCap = 1'000'000;

// C(P,Q): both marginals fixed.
struct BothMarginals {
  Dist p;
  Dist q;
};

// C(P,m): row marginal fixed, m columns.
struct OneMarginal {
  Dist p;
  std::size_t m;
};

class CouplingSpec {
 public:
  static CouplingSpec both(Dist p, Dist q) { return CouplingSpec(BothMarginals{std::move(p), std::move(q)}); }
  static CouplingSpec one(Dist p, std::size_t m) {
    if (m == 0) throw ZeroLength();
    return CouplingSpec(OneMarginal{std::move(p), m});
  }

  bool is_both() const noexcept { return std::holds_alternative<BothMarginals>(variant_); }
  const BothMarginals& as_both() const {
    if (!is_both()) throw InvariantViolation("expected a two-marginal coupling spec");
    return std::get<BothMarginals>(variant_);
  }
  const OneMarginal& as_one() const {
    if (is_both()) throw InvariantViolation("expected a one-marginal coupling spec");
    return std::get<OneMarginal>(variant_);
  }
  const Dist& p() const { return is_both() ? as_both().p : as_one().p; }
  std::size_t cols() const { return is_both() ? as_both().q.size() : as_one().m; }

 private:
  explicit CouplingSpec(std::variant<BothMarginals, OneMarginal> v) : variant_(std::move(v)) {}
  std::variant<BothMarginals, OneMarginal> variant_;
};

struct Cell {
  std::size_t row;
  std::size_t col;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Positive cells of a joint, row-major.
inline std::vector<Cell> positive_cells(const Joint& s) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.at(i, j) > 0) cells.push_back({i, j});
  return cells;
}

// True iff the cells, as edges of the bipartite graph rows x cols, form a forest.
inline bool is_forest(std::span<const Cell> cells, std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> parent(rows + cols);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : cells) {
    const auto a = find(c.row);
    const auto b = find(rows + c.col);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

struct TransportVertex {
  Joint joint;
  std::vector<Cell> support_edges;

  explicit TransportVertex(Joint j) : joint(std::move(j)), support_edges(positive_cells(joint)) {}
};

inline bool contains(const CouplingSpec& spec, const Joint& s) {
  const Dist& p = spec.p();
  if (s.rows() != p.size() || s.cols() != spec.cols()) {
    throw DimensionMismatch("joint is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                            ", spec expects " + std::to_string(p.size()) + "x" + std::to_string(spec.cols()));
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    Rational r = 0;
    for (std::size_t j = 0; j < s.cols(); ++j) r += s.at(i, j);
    if (r != p[i]) return false;
  }
  if (!spec.is_both()) return true;
  const Dist& q = spec.as_both().q;
  for (std::size_t j = 0; j < s.cols(); ++j) {
    Rational c = 0;
    for (std::size_t i = 0; i < s.rows(); ++i) c += s.at(i, j);
    if (c != q[j]) return false;
  }
  return true;
}

enum class Direction {
  YofX,  // every row has at most one positive entry
  XofY,  // every column has at most one positive entry
};

inline bool is_functional(const Joint& s, Direction direction) {
  if (direction == Direction::XofY) return is_functional(s.transposed(), Direction::YofX);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    const auto row = s.row(i);
    if (std::count_if(row.begin(), row.end(), [](const Rational& r) { return r > 0; }) > 1) return false;
  }
  return true;
}

// Northwest-corner rule. When a row and a column are exhausted together,
// both are advanced, so the support stays a forest.
inline TransportVertex northwest_corner(const CouplingSpec& spec) {
  const auto& both = spec.as_both();
  const std::size_t n = both.p.size();
  const std::size_t m = both.q.size();
  std::vector<Rational> r(both.p.masses().begin(), both.p.masses().end());
  std::vector<Rational> c(both.q.masses().begin(), both.q.masses().end());
  std::vector<Rational> flat(n * m);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n && j < m) {
    if (r[i] == 0) {
      ++i;
      continue;
    }
    if (c[j] == 0) {
      ++j;
      continue;
    }
    const Rational v = std::min(r[i], c[j]);
    flat[i * m + j] = v;
    r[i] -= v;
    c[j] -= v;
  }
  return TransportVertex(Joint(n, m, std::move(flat)));
}

namespace detail {

// Disjoint-set forest with rollback (union by size, no path compression).
class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }
  void rollback() {
    const std::size_t b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

// Exhaustive search over spanning trees of the complete bipartite graph on
// the positive rows and columns. Each tree fixes a unique solution by leaf
// peeling; nonnegative solutions are vertices. Degenerate vertices arise
// from several trees and are merged by the set.
template <class Int>
class SpanningTreeEnumerator {
 public:
  using Dense = std::vector<Int>;

  SpanningTreeEnumerator(const ScaledMarginals<Int>& margins, std::size_t cap)
      : margins_(margins), cap_(cap), n_(margins.rows.size()), m_(margins.cols.size()) {
    for (std::size_t i = 0; i < n_; ++i)
      if (margins.rows[i] > 0) active_rows_.push_back(i);
    for (std::size_t j = 0; j < m_; ++j)
      if (margins.cols[j] > 0) active_cols_.push_back(j);
    for (std::size_t a = 0; a < active_rows_.size(); ++a)
      for (std::size_t b = 0; b < active_cols_.size(); ++b) edges_.push_back({a, b});
    tree_size_ = active_rows_.size() + active_cols_.size() - 1;
  }

  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Enumerates the trees whose membership pattern on the first
  // prefix_bits.size() edges matches prefix_bits.
  std::set<Dense> run(const std::vector<bool>& prefix_bits) {
    found_.clear();
    chosen_.clear();
    RollbackDsu dsu(active_rows_.size() + active_cols_.size());
    prefix_ = &prefix_bits;
    search(0, dsu);
    return std::move(found_);
  }

 private:
  struct Edge {
    std::size_t a;
    std::size_t b;
  };

  void search(std::size_t e, RollbackDsu& dsu) {
    if (chosen_.size() == tree_size_) {
      evaluate();
      return;
    }
    if (chosen_.size() + (edges_.size() - e) < tree_size_) return;
    const bool forced = e < prefix_->size();
    const std::size_t rows = active_rows_.size();
    if (!forced || (*prefix_)[e]) {
      if (dsu.unite(edges_[e].a, rows + edges_[e].b)) {
        chosen_.push_back(e);
        search(e + 1, dsu);
        chosen_.pop_back();
        dsu.rollback();
      }
    }
    if (!forced || !(*prefix_)[e]) search(e + 1, dsu);
  }

  void evaluate() {
    const std::size_t rows = active_rows_.size();
    const std::size_t nodes = rows + active_cols_.size();
    std::vector<Int> residual(nodes);
    for (std::size_t a = 0; a < rows; ++a) residual[a] = margins_.rows[active_rows_[a]];
    for (std::size_t b = 0; b < active_cols_.size(); ++b) residual[rows + b] = margins_.cols[active_cols_[b]];
    std::vector<std::vector<std::size_t>> incident(nodes);
    for (std::size_t k = 0; k < chosen_.size(); ++k) {
      const auto& ed = edges_[chosen_[k]];
      incident[ed.a].push_back(k);
      incident[rows + ed.b].push_back(k);
    }
    std::vector<std::size_t> degree(nodes);
    for (std::size_t v = 0; v < nodes; ++v) degree[v] = incident[v].size();
    std::vector<bool> edge_done(chosen_.size(), false);
    std::vector<std::size_t> leaves;
    for (std::size_t v = 0; v < nodes; ++v)
      if (degree[v] == 1) leaves.push_back(v);
    Dense dense(n_ * m_, Int(0));
    std::size_t assigned = 0;
    while (!leaves.empty()) {
      const std::size_t v = leaves.back();
      leaves.pop_back();
      if (degree[v] != 1) continue;
      std::size_t k = 0;
      for (auto cand : incident[v])
        if (!edge_done[cand]) k = cand;
      edge_done[k] = true;
      const auto& ed = edges_[chosen_[k]];
      const std::size_t other = (v == ed.a) ? rows + ed.b : ed.a;
      const Int value = residual[v];
      if (value < 0 || residual[other] < value) return;
      residual[other] -= value;
      residual[v] = 0;
      dense[active_rows_[ed.a] * m_ + active_cols_[ed.b]] = value;
      ++assigned;
      --degree[v];
      if (--degree[other] == 1) leaves.push_back(other);
    }
    if (assigned != chosen_.size()) return;
    for (const auto& r : residual)
      if (r != 0) return;
    found_.insert(std::move(dense));
    if (found_.size() > cap_) throw VertexCapExceeded(found_.size());
  }

  const ScaledMarginals<Int>& margins_;
  std::size_t cap_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> active_rows_;
  std::vector<std::size_t> active_cols_;
  std::vector<Edge> edges_;
  std::size_t tree_size_ = 0;
  std::vector<std::size_t> chosen_;
  const std::vector<bool>* prefix_ = nullptr;
  std::set<Dense> found_;
};

template <class Int>
std::set<std::vector<Int>> enumerate_scaled_vertices(const ScaledMarginals<Int>& margins, std::size_t cap,
                                                     unsigned threads) {
  SpanningTreeEnumerator<Int> probe(margins, cap);
  std::size_t split_bits = 0;
  while ((std::size_t{1} << split_bits) < threads && split_bits < probe.edge_count() && split_bits < 8) ++split_bits;
  const std::size_t jobs = std::size_t{1} << split_bits;
  std::vector<std::set<std::vector<Int>>> partial(jobs);
  auto run_job = [&](std::size_t job) {
    std::vector<bool> bits(split_bits);
    for (std::size_t b = 0; b < split_bits; ++b) bits[b] = (job >> b) & 1U;
    SpanningTreeEnumerator<Int> worker(margins, cap);
    partial[job] = worker.run(bits);
  };
  if (jobs == 1) {
    run_job(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t job = t; job < jobs; job += threads) run_job(job);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::set<std::vector<Int>> merged;
  for (auto& part : partial) {
    merged.merge(part);
    if (merged.size() > cap) throw VertexCapExceeded(merged.size());
  }
  return merged;
}

}  // namespace detail

// All vertices of C(P,Q) in lexicographic (row-major) order.
inline std::vector<TransportVertex> enumerate_vertices(const CouplingSpec& spec, std::size_t cap = kDefaultVertexCap,
                                                       unsigned threads = 1) {
  const auto& both = spec.as_both();
  const BigInt scale = detail::common_denominator(both.p.masses(), both.q.masses());
  const std::size_t n = both.p.size();
  const std::size_t m = both.q.size();
  return detail::dispatch_scale(scale, [&]<class Int>() {
    const auto margins = detail::scale_pair<Int>(both.p, both.q, scale);
    const auto dense = detail::enumerate_scaled_vertices(margins, cap, std::max(1U, threads));
    std::vector<TransportVertex> out;
    out.reserve(dense.size());
    for (const auto& d : dense) out.emplace_back(detail::unscale(n, m, d, scale));
    return out;
  });
}

// Vertices of C(P,m): each positive row places its whole mass in one column.
// Rows are odometer digits, last positive row fastest.
class RowDeterministicRange {
 public:
  explicit RowDeterministicRange(const CouplingSpec& spec) : p_(spec.as_one().p), m_(spec.as_one().m) {
    positive_ = p_.support().indices;
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Joint;
    using difference_type = std::ptrdiff_t;
    using pointer = const Joint*;
    using reference = const Joint&;

    iterator() = default;
    iterator(const RowDeterministicRange* range) : range_(range), digits_(range->positive_.size(), 0) { load(); }

    reference operator*() const { return *current_; }
    pointer operator->() const { return &*current_; }
    iterator& operator++() {
      std::size_t k = digits_.size();
      while (k > 0) {
        --k;
        if (++digits_[k] < range_->m_) {
          load();
          return *this;
        }
        digits_[k] = 0;
      }
      range_ = nullptr;
      digits_.clear();
      current_.reset();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.range_ == b.range_ && a.digits_ == b.digits_; }

    const std::vector<std::size_t>& assignment() const noexcept { return digits_; }

   private:
    void load() {
      const std::size_t n = range_->p_.size();
      const std::size_t m = range_->m_;
      std::vector<Rational> flat(n * m);
      for (std::size_t k = 0; k < digits_.size(); ++k) {
        const std::size_t i = range_->positive_[k];
        flat[i * m + digits_[k]] = range_->p_[i];
      }
      current_.emplace(n, m, std::move(flat));
    }

    const RowDeterministicRange* range_ = nullptr;
    std::vector<std::size_t> digits_;
    std::optional<Joint> current_;
  };

  iterator begin() const { return iterator(this); }
  iterator end() const { return iterator(); }

 private:
  Dist p_;
  std::size_t m_;
  std::vector<std::size_t> positive_;
};

inline RowDeterministicRange enumerate_row_deterministic(const CouplingSpec& spec) { return RowDeterministicRange(spec); }

}  // namespace mincoupling
