// Small walk through the library: couplings of two distributions, the
// lower entropy distance, and a Subset Sum instance decided through MEC.

#include <cstdio>

#include "mincoupling/mincoupling.hpp"

using namespace mincoupling;

static void print(const char* title, const Joint& s) {
  std::printf("%s\n", title);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    std::printf(" ");
    for (std::size_t j = 0; j < s.cols(); ++j) std::printf(" %6s", to_string(s.at(i, j)).c_str());
    std::printf("\n");
  }
}

int main() {
  const Dist p = make_dist({Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  const Dist q = make_dist({Rational(1, 2), Rational(1, 2)});

  const auto vertices = enumerate_vertices(CouplingSpec::both(p, q));
  std::printf("C(P,Q) has %zu vertices\n", vertices.size());

  const auto mec = min_entropy_coupling_exact(p, q);
  print("minimum entropy coupling:", mec.coupling);
  std::printf("  H(S) = %.6f bits, max{H(P),H(Q)} = %.6f\n", mec.objective_value,
              std::max(shannon_entropy(p), shannon_entropy(q)));

  const auto greedy = min_entropy_coupling_greedy(p, q);
  std::printf("greedy heuristic: %.6f bits\n", greedy.objective_value);

  const auto profile = lower_delta_profile(p, q);
  std::printf("lower Delta_1 = %.6f, lower Delta_inf = %.6f\n", profile.at(PNorm(1.0)), profile.at(PNorm::infinity()));

  const SubsetSumInstance inst({3, 1, 4, 2}, 6);
  const auto outcome = reduce_subset_sum(inst);
  std::printf("subset sum {3,1,4,2} -> 6: %s\n", outcome.answer ? "yes" : "no");
  return 0;
}
