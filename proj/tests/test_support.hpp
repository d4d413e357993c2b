#pragma once

// Shared helpers for the test suites: literal constructors and seeded
// random instance generators with small denominators.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mincoupling/mincoupling.hpp"

namespace mincoupling::testing {

inline Rational R(const std::string& s) { return parse_rational(s); }

inline Dist D(std::initializer_list<const char*> masses) {
  std::vector<Rational> v;
  for (const char* m : masses) v.push_back(parse_rational(m));
  return make_dist(std::move(v));
}

inline Joint J(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : rows) {
    std::vector<Rational> r;
    for (const char* m : row) r.push_back(parse_rational(m));
    out.push_back(std::move(r));
  }
  return make_joint(out);
}

// Random distribution of length n: integer weights in [0, max_weight] with
// at least one positive, normalized. Zeros appear with probability
// zero_chance.
inline Dist random_dist(std::mt19937_64& rng, std::size_t n, int max_weight = 9, double zero_chance = 0.0) {
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::bernoulli_distribution zero(zero_chance);
  std::vector<long long> w(n);
  do {
    for (auto& x : w) x = zero(rng) ? 0 : weight(rng);
  } while (std::accumulate(w.begin(), w.end(), 0LL) == 0);
  const long long total = std::accumulate(w.begin(), w.end(), 0LL);
  std::vector<Rational> masses;
  for (auto x : w) masses.emplace_back(x, total);
  return make_dist(std::move(masses));
}

inline Dist random_dist_up_to(std::mt19937_64& rng, std::size_t max_n, int max_weight = 9, double zero_chance = 0.0) {
  std::uniform_int_distribution<std::size_t> len(1, max_n);
  return random_dist(rng, len(rng), max_weight, zero_chance);
}

inline Joint random_joint(std::mt19937_64& rng, std::size_t max_rows, std::size_t max_cols, int max_weight = 9,
                          double zero_chance = 0.3) {
  std::uniform_int_distribution<std::size_t> rows(1, max_rows);
  std::uniform_int_distribution<std::size_t> cols(1, max_cols);
  const std::size_t n = rows(rng);
  const std::size_t m = cols(rng);
  const Dist flat = random_dist(rng, n * m, max_weight, zero_chance);
  return Joint(n, m, std::vector<Rational>(flat.masses().begin(), flat.masses().end()));
}

inline Dist permuted(const Dist& p, std::mt19937_64& rng) {
  std::vector<Rational> v(p.masses().begin(), p.masses().end());
  std::shuffle(v.begin(), v.end(), rng);
  return make_dist(std::move(v));
}

inline double min_vertex_entropy(const Dist& p, const Dist& q) {
  double best = 1e300;
  for (const auto& v : enumerate_vertices(CouplingSpec::both(p, q))) best = std::min(best, joint_entropy(v.joint));
  return best;
}

inline ExactOptions bnb_only() {
  ExactOptions o;
  o.strategy = ExactStrategy::BranchAndBound;
  return o;
}

}  // namespace mincoupling::testing
