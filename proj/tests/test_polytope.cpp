#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "test_support.hpp"

namespace mincoupling {
namespace {

using testing::D;
using testing::J;
using testing::R;

std::set<Joint> joints_of(const std::vector<TransportVertex>& vs) {
  std::set<Joint> out;
  for (const auto& v : vs) out.insert(v.joint);
  return out;
}

TEST(Contains, Examples) {
  const auto spec = CouplingSpec::both(D({"1/2", "1/2"}), D({"3/4", "1/4"}));
  EXPECT_TRUE(contains(spec, J({{"1/4", "1/4"}, {"1/2", "0"}})));
  EXPECT_TRUE(contains(spec, product(D({"1/2", "1/2"}), D({"3/4", "1/4"}))));
  EXPECT_FALSE(contains(spec, J({{"1/2", "0"}, {"0", "1/2"}})));
  EXPECT_THROW(contains(spec, J({{"1"}})), DimensionMismatch);

  const auto one = CouplingSpec::one(D({"1/2", "1/2"}), 3);
  EXPECT_TRUE(contains(one, J({{"1/2", "0", "0"}, {"0", "0", "1/2"}})));
  EXPECT_FALSE(contains(one, J({{"1/4", "0", "0"}, {"0", "0", "3/4"}})));
  EXPECT_THROW(CouplingSpec::one(D({"1"}), 0), ZeroLength);
}

TEST(EnumerateVertices, Examples) {
  EXPECT_EQ(joints_of(enumerate_vertices(CouplingSpec::both(D({"1/2", "1/2"}), D({"3/4", "1/4"})))),
            (std::set<Joint>{J({{"1/4", "1/4"}, {"1/2", "0"}}), J({{"1/2", "0"}, {"1/4", "1/4"}})}));
  EXPECT_EQ(joints_of(enumerate_vertices(CouplingSpec::both(D({"1"}), D({"1"})))), (std::set<Joint>{J({{"1"}})}));
  const Dist half = D({"1/2", "1/2"});
  EXPECT_EQ(joints_of(enumerate_vertices(CouplingSpec::both(half, half))),
            (std::set<Joint>{J({{"1/2", "0"}, {"0", "1/2"}}), J({{"0", "1/2"}, {"1/2", "0"}})}));
}

TEST(EnumerateVertices, OutputIsSortedAndUnique) {
  const auto vs = enumerate_vertices(CouplingSpec::both(uniform(3), uniform(3)));
  // Degenerate: the vertices of the scaled Birkhoff polytope are the 3! permutations.
  ASSERT_EQ(vs.size(), 6U);
  for (std::size_t k = 1; k < vs.size(); ++k) EXPECT_TRUE(vs[k - 1].joint < vs[k].joint);
}

TEST(EnumerateVertices, CapTrips) {
  try {
    enumerate_vertices(CouplingSpec::both(uniform(3), uniform(3)), 4);
    FAIL() << "expected VertexCapExceeded";
  } catch (const VertexCapExceeded& e) {
    EXPECT_GT(e.count_so_far(), 4U);
  }
  EXPECT_THROW(enumerate_vertices(CouplingSpec::one(uniform(2), 2)), InvariantViolation);
}

TEST(EnumerateVertices, ZeroMassesKeepDimensions) {
  const Dist p = D({"1/2", "0", "1/2"});
  const Dist q = D({"0", "1"});
  const auto vs = enumerate_vertices(CouplingSpec::both(p, q));
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].joint, J({{"0", "1/2"}, {"0", "0"}, {"0", "1/2"}}));
}

TEST(EnumerateVertices, MatchesEliminationOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const Dist p = testing::random_dist_up_to(rng, 3, 6, 0.15);
    const Dist q = testing::random_dist_up_to(rng, 3, 6, 0.15);
    std::set<std::vector<Rational>> ours;
    for (const auto& v : enumerate_vertices(CouplingSpec::both(p, q)))
      ours.insert(std::vector<Rational>(v.joint.flat().begin(), v.joint.flat().end()));
    ASSERT_EQ(ours, testing::elimination_vertices(p, q));
  }
}

TEST(EnumerateVertices, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const Dist p = testing::random_dist_up_to(rng, 4, 9, 0.1);
    const Dist q = testing::random_dist_up_to(rng, 4, 9, 0.1);
    const auto spec = CouplingSpec::both(p, q);
    const auto vs = enumerate_vertices(spec);
    ASSERT_FALSE(vs.empty());
    for (const auto& v : vs) {
      ASSERT_TRUE(contains(spec, v.joint));
      ASSERT_TRUE(is_forest(v.support_edges, p.size(), q.size()));
      ASSERT_LE(v.support_edges.size(), p.size() + q.size() - 1);
    }
    // Extremality probe: if V = (W + W')/2 with W' = 2V - W in the polytope,
    // W' must be nonnegative. For a vertex that only happens when W = V.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& v : vs) {
      for (int probe = 0; probe < 5; ++probe) {
        std::vector<Rational> w(v.joint.flat().size());
        Rational total = 0;
        for (const auto& other : vs) {
          const Rational lambda(static_cast<long long>(1 + 7 * u(rng)), 8);
          total += lambda;
          for (std::size_t k = 0; k < w.size(); ++k) w[k] += lambda * other.joint.flat()[k];
        }
        for (auto& x : w) x /= total;
        if (std::equal(w.begin(), w.end(), v.joint.flat().begin())) continue;
        bool reflection_nonnegative = true;
        for (std::size_t k = 0; k < w.size(); ++k)
          if (2 * v.joint.flat()[k] - w[k] < 0) reflection_nonnegative = false;
        ASSERT_FALSE(reflection_nonnegative);
      }
    }
    // The northwest-corner vertex is among them.
    const auto nw = northwest_corner(spec);
    ASSERT_TRUE(std::any_of(vs.begin(), vs.end(), [&](const TransportVertex& v) { return v.joint == nw.joint; }));
  }
}

TEST(EnumerateVertices, ThreadCountDoesNotChangeOutput) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    const Dist p = testing::random_dist(rng, 4);
    const Dist q = testing::random_dist(rng, 3);
    const auto spec = CouplingSpec::both(p, q);
    const auto one = enumerate_vertices(spec, kDefaultVertexCap, 1);
    const auto four = enumerate_vertices(spec, kDefaultVertexCap, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t k = 0; k < one.size(); ++k) ASSERT_EQ(one[k].joint, four[k].joint);
  }
}

TEST(EnumerateVertices, LargeDenominatorsUseBigIntegers) {
  // Common denominator beyond 64 bits.
  const Rational a(BigInt(1), BigInt("340282366920938463463374607431768211457"));
  const Dist p({a, Rational(1 - a)});
  const Dist q = D({"1/3", "2/3"});
  const auto vs = enumerate_vertices(CouplingSpec::both(p, q));
  ASSERT_EQ(vs.size(), 2U);
  for (const auto& v : vs) EXPECT_TRUE(contains(CouplingSpec::both(p, q), v.joint));
}

TEST(RowDeterministic, Examples) {
  auto count = [](const CouplingSpec& spec) {
    std::size_t c = 0;
    for (const auto& s : enumerate_row_deterministic(spec)) {
      EXPECT_TRUE(contains(spec, s));
      EXPECT_TRUE(is_functional(s, Direction::YofX));
      ++c;
    }
    return c;
  };
  const auto one = CouplingSpec::one(D({"1"}), 2);
  const auto range = enumerate_row_deterministic(one);
  std::set<Joint> seen(range.begin(), range.end());
  EXPECT_EQ(seen, (std::set<Joint>{J({{"1", "0"}}), J({{"0", "1"}})}));
  EXPECT_EQ(count(CouplingSpec::one(D({"1/2", "1/2"}), 2)), 4U);
  EXPECT_EQ(count(CouplingSpec::one(D({"1/6", "1/3", "1/2"}), 2)), 8U);
  // Zero rows do not multiply the count.
  EXPECT_EQ(count(CouplingSpec::one(D({"1/2", "0", "1/2"}), 3)), 9U);
}

TEST(IsFunctional, Examples) {
  const Joint d = diagonal(D({"1/6", "1/3", "1/2"}));
  EXPECT_TRUE(is_functional(d, Direction::YofX));
  EXPECT_TRUE(is_functional(d, Direction::XofY));
  EXPECT_FALSE(is_functional(product(uniform(2), uniform(2)), Direction::YofX));
  const Joint s = J({{"1/6", "0"}, {"0", "1/3"}, {"0", "1/2"}});
  EXPECT_TRUE(is_functional(s, Direction::YofX));
  EXPECT_FALSE(is_functional(s, Direction::XofY));
}

TEST(NorthwestCorner, Examples) {
  EXPECT_EQ(northwest_corner(CouplingSpec::both(D({"1/2", "1/2"}), D({"3/4", "1/4"}))).joint,
            J({{"1/2", "0"}, {"1/4", "1/4"}}));
  EXPECT_EQ(northwest_corner(CouplingSpec::both(D({"1"}), D({"1"}))).joint, J({{"1"}}));
  const auto v = northwest_corner(CouplingSpec::both(D({"1/4", "3/4"}), D({"1/2", "1/2"})));
  EXPECT_EQ(v.joint, J({{"1/4", "0"}, {"1/4", "1/2"}}));
  EXPECT_EQ(v.support_edges, (std::vector<Cell>{{0, 0}, {1, 0}, {1, 1}}));
}

TEST(NorthwestCorner, DegenerateTieStaysForest) {
  const auto spec = CouplingSpec::both(D({"1/2", "1/2"}), D({"1/2", "1/2"}));
  const auto v = northwest_corner(spec);
  EXPECT_EQ(v.joint, diagonal(D({"1/2", "1/2"})));
  EXPECT_TRUE(is_forest(v.support_edges, 2, 2));
}

}  // namespace
}  // namespace mincoupling
