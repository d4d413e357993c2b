#pragma once

// Subset Sum, Partition and 3-Partition as coupling problems, with
// classical oracles for cross-checking. Decisions are read off exact
// support structure or exact column sums, never off entropy values alone.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "polytope.hpp"
#include "solvers.hpp"

namespace mincoupling {

inline constexpr std::uint64_t kDefaultDpBudget = 100'000'000;

class SubsetSumInstance {
 public:
  SubsetSumInstance(std::vector<std::uint64_t> weights, std::uint64_t target)
      : weights_(std::move(weights)), target_(target) {
    if (weights_.size() < 2) throw InvariantViolation("subset sum needs at least two weights");
    for (auto d : weights_)
      if (d == 0) throw InvariantViolation("subset sum weights must be positive");
    total_ = std::accumulate(weights_.begin(), weights_.end(), std::uint64_t{0});
    if (target_ == 0 || target_ >= total_) {
      throw InvariantViolation("target must satisfy 1 <= s < " + std::to_string(total_));
    }
  }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t target() const noexcept { return target_; }
  std::uint64_t total() const noexcept { return total_; }

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t target_;
  std::uint64_t total_ = 0;
};

class ThreePartitionInstance {
 public:
  ThreePartitionInstance(std::vector<std::uint64_t> weights, std::uint64_t bound, std::uint64_t groups)
      : weights_(std::move(weights)), bound_(bound), groups_(groups) {
    if (groups_ == 0 || bound_ == 0) throw InvariantViolation("3-partition needs positive k and m");
    if (weights_.size() != 3 * groups_) {
      throw InvariantViolation("3-partition needs exactly 3m = " + std::to_string(3 * groups_) + " weights");
    }
    for (auto d : weights_) {
      if (!(4 * d > bound_ && 2 * d < bound_)) {
        throw InvariantViolation("weight " + std::to_string(d) + " outside (k/4, k/2) for k = " + std::to_string(bound_));
      }
    }
    const auto total = std::accumulate(weights_.begin(), weights_.end(), std::uint64_t{0});
    if (total != groups_ * bound_) throw InvariantViolation("weights must sum to m * k");
  }
  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t bound() const noexcept { return bound_; }
  std::uint64_t groups() const noexcept { return groups_; }

 private:
  std::vector<std::uint64_t> weights_;
  std::uint64_t bound_;
  std::uint64_t groups_;
};

namespace detail {

inline Dist weights_to_dist(const std::vector<std::uint64_t>& weights) {
  const auto total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total == 0) throw InvariantViolation("weights sum to zero");
  std::vector<Rational> masses;
  masses.reserve(weights.size());
  for (auto d : weights) masses.emplace_back(BigInt(d), BigInt(total));
  return Dist(std::move(masses));
}

// Row indices grouped by the column that carries them.
inline std::vector<std::vector<std::size_t>> groups_of(const Joint& s) {
  std::vector<std::vector<std::size_t>> groups(s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (s.at(i, j) > 0) groups[j].push_back(i);
  return groups;
}

}  // namespace detail

struct ReductionOutcome {
  bool answer;
  CouplingSolution solution;
  // Row indices per column of the returned coupling.
  std::vector<std::vector<std::size_t>> groups;
};

inline std::pair<Dist, Dist> encode_subset_sum(const SubsetSumInstance& inst) {
  const Rational q(BigInt(inst.target()), BigInt(inst.total()));
  return {detail::weights_to_dist(inst.weights()), Dist({q, Rational(1 - q)})};
}

inline ReductionOutcome reduce_subset_sum(const SubsetSumInstance& inst, const ExactOptions& options = {}) {
  auto [p, q] = encode_subset_sum(inst);
  auto mec = min_entropy_coupling_exact(p, q, OrderAlpha::shannon(), kBits, options);
  const bool answer = is_functional(mec.coupling, Direction::YofX);
  auto groups = detail::groups_of(mec.coupling);
  return {answer, std::move(mec), std::move(groups)};
}

inline bool decide_subset_sum(const SubsetSumInstance& inst, const ExactOptions& options = {}) {
  return reduce_subset_sum(inst, options).answer;
}

inline std::pair<Dist, std::size_t> encode_partition(const std::vector<std::uint64_t>& weights) {
  if (weights.size() < 2) throw InvariantViolation("partition needs at least two weights");
  for (auto d : weights)
    if (d == 0) throw InvariantViolation("partition weights must be positive");
  return {detail::weights_to_dist(weights), 2};
}

namespace detail {

inline bool columns_exactly_uniform(const Joint& s) {
  const Dist cols = column_marginal(s);
  const Rational share(1, static_cast<long long>(s.cols()));
  for (const auto& c : cols.masses())
    if (c != share) return false;
  return true;
}

}  // namespace detail

inline ReductionOutcome reduce_partition(const std::vector<std::uint64_t>& weights,
                                         std::size_t budget = kDefaultChannelBudget) {
  auto [p, m] = encode_partition(weights);
  auto channel = optimal_channel(p, m, kBits, budget);
  const bool float_says = std::abs(channel.objective_value - 1.0) <= 1e-9;
  const bool exact_says = detail::columns_exactly_uniform(channel.coupling);
  auto groups = detail::groups_of(channel.coupling);
  return {float_says && exact_says, std::move(channel), std::move(groups)};
}

inline bool decide_partition(const std::vector<std::uint64_t>& weights, std::size_t budget = kDefaultChannelBudget) {
  return reduce_partition(weights, budget).answer;
}

inline ReductionOutcome reduce_3partition(const ThreePartitionInstance& inst,
                                          std::size_t budget = kDefaultChannelBudget) {
  const Dist p = detail::weights_to_dist(inst.weights());
  auto channel = optimal_channel(p, inst.groups(), kBits, budget);
  const bool answer = is_functional(channel.coupling, Direction::YofX) && detail::columns_exactly_uniform(channel.coupling);
  auto groups = detail::groups_of(channel.coupling);
  return {answer, std::move(channel), std::move(groups)};
}

inline bool decide_3partition(const ThreePartitionInstance& inst, std::size_t budget = kDefaultChannelBudget) {
  return reduce_3partition(inst, budget).answer;
}

// Reachable subset sums, one byte per value up to the total.
inline std::vector<char> reachable_sums(const std::vector<std::uint64_t>& weights, std::uint64_t budget) {
  const auto total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total > budget) throw BudgetExceeded("DP table of size " + std::to_string(total) + " > " + std::to_string(budget));
  std::vector<char> reach(total + 1, 0);
  reach[0] = 1;
  std::uint64_t hi = 0;
  for (auto d : weights) {
    for (std::uint64_t v = hi + 1; v-- > 0;)
      if (reach[v]) reach[v + d] = 1;
    hi += d;
  }
  return reach;
}

inline bool dp_oracle_subset_sum(const SubsetSumInstance& inst, std::uint64_t budget = kDefaultDpBudget) {
  return reachable_sums(inst.weights(), budget)[inst.target()] != 0;
}

inline bool dp_oracle_partition(const std::vector<std::uint64_t>& weights, std::uint64_t budget = kDefaultDpBudget) {
  const auto total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total % 2 != 0) return false;
  return reachable_sums(weights, budget)[total / 2] != 0;
}

// Backtracking over group assignments with capacity k.
inline bool exhaustive_oracle_3partition(const ThreePartitionInstance& inst) {
  const auto& w = inst.weights();
  std::vector<std::uint64_t> load(inst.groups(), 0);
  auto place = [&](auto&& self, std::size_t idx) -> bool {
    if (idx == w.size()) return true;
    for (std::size_t g = 0; g < load.size(); ++g) {
      if (load[g] + w[idx] > inst.bound()) continue;
      load[g] += w[idx];
      if (self(self, idx + 1)) return true;
      load[g] -= w[idx];
      if (load[g] == 0) break;  // empty groups are interchangeable
    }
    return false;
  };
  return place(place, 0);
}

}  // namespace mincoupling
