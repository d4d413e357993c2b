// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace mc = mincoupling;
using mc::testing::random_dist;
using mc::testing::random_dist_up_to;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] %s %s (%.2fs)\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Runs `body`, which returns (ok, detail); exceptions count as failures.
void criterion(const std::string& id, const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::pair<bool, std::string> result;
  try {
    result = body();
  } catch (const std::exception& e) {
    result = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, result.first, result.second, secs);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool balanced_partition_exists(const mc::Dist& p, std::size_t m) {
  const mc::Rational share(1, static_cast<long long>(m));
  for (const auto& s : mc::enumerate_row_deterministic(mc::CouplingSpec::one(p, m))) {
    const auto cols = mc::column_marginal(s);
    bool all = true;
    for (const auto& c : cols.masses()) all = all && c == share;
    if (all) return true;
  }
  return false;
}

}  // namespace

int main() {
  criterion("C1 MEC matches brute-force vertex minimum (200 instances, n,m<=4, tol 1e-9)", [] {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto p = random_dist_up_to(rng, 4, 9, 0.15);
      const auto q = random_dist_up_to(rng, 4, 9, 0.15);
      const double brute = mc::testing::min_vertex_entropy(p, q);
      const double fast = mc::min_entropy_coupling_exact(p, q).objective_value;
      const double bnb = mc::min_entropy_coupling_exact(p, q, mc::OrderAlpha::shannon(), mc::kBits,
                                                        mc::testing::bnb_only())
                             .objective_value;
      worst = std::max({worst, std::abs(fast - brute), std::abs(bnb - brute)});
    }
    return std::pair{worst <= 1e-9, "max |diff| = " + num(worst)};
  });

  criterion("C2 maximal coupling exact (1000 pairs, zero tolerance)", [] {
    std::mt19937_64 rng(1002);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
      const auto p = random_dist(rng, n, 12, 0.2);
      const auto q = random_dist(rng, n, 12, 0.2);
      const auto s = mc::maximal_coupling(p, q).coupling;
      mc::Rational diag = 0;
      mc::Rational mins = 0;
      for (std::size_t i = 0; i < n; ++i) {
        diag += s.at(i, i);
        mins += std::min(p[i], q[i]);
      }
      if (diag != mins || mc::Rational(1 - diag) != mc::total_variation(p, q)) ++bad;
      if (!mc::contains(mc::CouplingSpec::both(p, q), s)) ++bad;
    }
    return std::pair{bad == 0, std::to_string(bad) + " mismatches"};
  });

  criterion("C3 sandwich max{H(P),H(Q)} <= MEC <= H(P x Q) (1000 pairs, n,m<=5, tol 1e-9)", [] {
    std::mt19937_64 rng(1003);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto p = random_dist_up_to(rng, 5, 9, 0.1);
      const auto q = random_dist_up_to(rng, 5, 9, 0.1);
      const double hp = mc::shannon_entropy(p);
      const double hq = mc::shannon_entropy(q);
      const double hprod = mc::joint_entropy(mc::product(p, q));
      const double mec = mc::min_entropy_coupling_exact(p, q).objective_value;
      if (mec < std::max(hp, hq) - 1e-9 || mec > hprod + 1e-9 || std::abs(hprod - hp - hq) > 1e-9) ++bad;
    }
    return std::pair{bad == 0, std::to_string(bad) + " violations"};
  });

  criterion("C4 reductions agree with DP oracles (100 subset-sum, 100 partition)", [] {
    std::mt19937_64 rng(1004);
    int bad = 0;
    int yes = 0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
      std::vector<std::uint64_t> d(n);
      for (auto& x : d) x = std::uniform_int_distribution<std::uint64_t>(1, 40)(rng);
      const auto total = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
      const mc::SubsetSumInstance inst(d, std::uniform_int_distribution<std::uint64_t>(1, total - 1)(rng));
      const bool oracle = mc::dp_oracle_subset_sum(inst);
      yes += oracle;
      if (mc::decide_subset_sum(inst) != oracle) ++bad;
    }
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
      std::vector<std::uint64_t> d(n);
      for (auto& x : d) x = std::uniform_int_distribution<std::uint64_t>(1, 30)(rng);
      const bool oracle = mc::dp_oracle_partition(d);
      yes += oracle;
      if (mc::decide_partition(d) != oracle) ++bad;
    }
    return std::pair{bad == 0, std::to_string(bad) + " disagreements, " + std::to_string(yes) + "/200 yes-instances"};
  });

  criterion("C5 pseudometric: triangle, permutation zero, separation (300 triples, supports<=4)", [] {
    std::mt19937_64 rng(1005);
    int bad = 0;
    const mc::PNorm one(1.0);
    const auto inf = mc::PNorm::infinity();
    for (int t = 0; t < 300; ++t) {
      const auto p = random_dist_up_to(rng, 4, 9, 0.1);
      const auto q = random_dist_up_to(rng, 4, 9, 0.1);
      const auto r = random_dist_up_to(rng, 4, 9, 0.1);
      const auto pq = mc::lower_delta_profile(p, q);
      const auto qr = mc::lower_delta_profile(q, r);
      const auto pr = mc::lower_delta_profile(p, r);
      for (auto n : {one, inf}) {
        if (pr.at(n) > pq.at(n) + qr.at(n) + 1e-9) ++bad;
      }
      const auto sigma = mc::testing::permuted(p, rng);
      const auto ps = mc::lower_delta_profile(p, sigma);
      if (ps.at(one) != 0.0 || ps.at(inf) != 0.0) ++bad;
      if (!mc::is_permutation_of(p, q) && !(pq.at(one) > 1e-6 && pq.at(inf) > 1e-6)) ++bad;
    }
    return std::pair{bad == 0, std::to_string(bad) + " violations"};
  });

  criterion("C6 entropy-gap and Fano bounds (1000 pairs, tol 1e-9)", [] {
    std::mt19937_64 rng(1006);
    int bad = 0;
    double tightest = 1e300;
    for (int t = 0; t < 1000; ++t) {
      const auto p = random_dist_up_to(rng, 5, 9, 0.1);
      const auto q = random_dist_up_to(rng, 5, 9, 0.1);
      const auto rep = mc::bound_report(p, q);
      if (!rep.holds(1e-9)) ++bad;
      for (const auto& e : rep.entries) tightest = std::min(tightest, e.slack);
    }
    return std::pair{bad == 0, std::to_string(bad) + " violations, min slack " + num(tightest)};
  });

  criterion("C7 Delta_p nonincreasing in p (200 pairs) and single-solve matches vertex minimum (n,m<=3)", [] {
    std::mt19937_64 rng(1007);
    const std::vector<mc::PNorm> norms{mc::PNorm(1.0), mc::PNorm(1.5), mc::PNorm(2.0), mc::PNorm(4.0),
                                       mc::PNorm::infinity()};
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      const auto p = random_dist_up_to(rng, 4, 9, 0.1);
      const auto q = random_dist_up_to(rng, 4, 9, 0.1);
      const auto profile = mc::lower_delta_profile(p, q);
      for (std::size_t k = 1; k < norms.size(); ++k) {
        if (profile.at(norms[k]) > profile.at(norms[k - 1]) + 1e-9) ++bad;
      }
    }
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto p = random_dist_up_to(rng, 3);
      const auto q = random_dist_up_to(rng, 3);
      const auto profile = mc::lower_delta_profile(p, q);
      const auto vertices = mc::enumerate_vertices(mc::CouplingSpec::both(p, q));
      for (const auto& n : norms) {
        double best = 1e300;
        for (const auto& v : vertices) best = std::min(best, mc::delta_p(v.joint, n));
        worst = std::max(worst, std::abs(best - profile.at(n)));
      }
    }
    return std::pair{bad == 0 && worst <= 1e-9,
                     std::to_string(bad) + " monotonicity violations, max cross-check diff " + num(worst)};
  });

  criterion("C8 optimal channel matches row-deterministic maximum; log2 m iff balanced (100 P, m in {2,3})", [] {
    std::mt19937_64 rng(1008);
    double worst = 0.0;
    int bad = 0;
    int balanced = 0;
    for (int t = 0; t < 100; ++t) {
      const auto p = random_dist_up_to(rng, 6, 6);
      const std::size_t m = 2 + static_cast<std::size_t>(t % 2);
      const auto sol = mc::optimal_channel(p, m);
      double best = -1.0;
      for (const auto& s : mc::enumerate_row_deterministic(mc::CouplingSpec::one(p, m))) {
        best = std::max(best, mc::mutual_information(s));
      }
      worst = std::max(worst, std::abs(best - sol.objective_value));
      const bool is_log_m = std::abs(sol.objective_value - std::log2(static_cast<double>(m))) <= 1e-9;
      const bool exists = balanced_partition_exists(p, m);
      balanced += exists;
      if (is_log_m != exists) ++bad;
    }
    return std::pair{worst <= 1e-9 && bad == 0, "max |diff| = " + num(worst) + ", " + std::to_string(bad) +
                                                    " iff violations, " + std::to_string(balanced) + " balanced"};
  });

  {
    // Criterion 9 has four parts; each gets its own line.
    mc::UnboundedFamilyParams params;  // alpha 0.4, beta 3, r 1.5, N 1e4
    std::vector<mc::TraceRow> trace;
    criterion("C9a unbounded family: lower bound strictly increasing over n in {10,1e2,1e3,1e4}", [&] {
      trace = mc::divergence_trace(params, {10, 100, 1000, 10000});
      bool ok = true;
      std::string detail = "bounds";
      for (std::size_t k = 0; k < trace.size(); ++k) {
        detail += " " + num(trace[k].lower_bound);
        if (k > 0 && !(trace[k].lower_bound > trace[k - 1].lower_bound)) ok = false;
      }
      return std::pair{ok, detail};
    });
    criterion("C9b unbounded family: H_alpha(S_n) >= bound - 1e-9 at every stage, S_n in C(P,P)", [&] {
      bool ok = trace.size() == 4;
      std::string detail = "H_alpha";
      for (const auto& row : trace) {
        detail += " " + num(row.h_alpha);
        ok = ok && row.h_alpha >= row.lower_bound - 1e-9;
      }
      double err = 0.0;
      for (std::size_t n : {10U, 100U, 1000U}) {
        params.n = n;
        err = std::max(err, mc::build_stage(params).max_marginal_error());
      }
      ok = ok && err <= 1e-12;
      return std::pair{ok, detail + ", max marginal error " + num(err)};
    });
    criterion("C9c unbounded family: bound(1e4) - bound(10) >= 3 bits", [&] {
      const double gain = trace.back().lower_bound - trace.front().lower_bound;
      return std::pair{gain >= 3.0, "gain " + num(gain) + " bits"};
    });
    criterion("C9d unbounded family: H_alpha(P) finite and stable to < 1e-3 bits when N doubles", [&] {
      const mc::OrderAlpha alpha(params.alpha);
      const double h1 = mc::renyi_of(mc::power_law(params.beta, 10000), alpha);
      const double h2 = mc::renyi_of(mc::power_law(params.beta, 20000), alpha);
      const double drift = std::abs(h2 - h1);
      return std::pair{std::isfinite(h1) && std::isfinite(h2) && drift < 1e-3,
                       "H_alpha(P) " + num(h1) + " -> " + num(h2) + ", drift " + num(drift) + " bits"};
    });
  }

  criterion("C10 conditional entropy as a distance: both paths agree (500 joints, tol 1e-12)", [] {
    std::mt19937_64 rng(1010);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
      const auto s = mc::testing::random_joint(rng, 5, 5);
      const auto [a, b] = mc::conditional_entropy_distance_check(s);
      worst = std::max(worst, std::abs(a - b));
    }
    return std::pair{worst <= 1e-12, "max |diff| = " + num(worst)};
  });

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
