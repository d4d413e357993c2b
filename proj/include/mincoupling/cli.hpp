#pragma once

// Command-line front end. run() parses one subcommand, writes a JSON (or
// CSV) report to `out` and returns the exit status:
//   0 success (NO answers included), 1 other failure, 2 usage or input
//   error, 3 vertex cap or budget exceeded.

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "counterexample.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "reductions.hpp"
#include "solvers.hpp"

namespace mincoupling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLimit = 3;

namespace detail {

inline OrderAlpha parse_alpha(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return OrderAlpha::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return OrderAlpha(v);
  } catch (const std::logic_error&) {
    throw ParseError("--alpha: not a number: '" + text + "'");
  } catch (const OutOfRange& e) {
    throw ParseError(std::string("--alpha: ") + e.what());
  }
}

inline PNorm parse_pnorm(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return PNorm::infinity();
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw ParseError("--pnorm: not a number: '" + text + "'");
  }
  return PNorm(v);
}

inline nlohmann::json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline std::vector<std::uint64_t> parse_weights(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : mincoupling::detail::split(text, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(part, &used);
      if (used != part.size() || part.empty() || part.front() == '-') throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("--weights: not a nonnegative integer: '" + part + "'");
    }
  }
  return out;
}

inline std::vector<std::size_t> parse_stages(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto w : parse_weights(text)) out.push_back(static_cast<std::size_t>(w));
  return out;
}

template <class Fn>
auto with_flag(const std::string& flag, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const NegativeMass& e) {
    throw NegativeMass(flag + " " + e.what());
  } catch (const NotNormalized& e) {
    throw NotNormalized(flag + " " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(flag + " " + e.what());
  }
}

inline std::string strategy_name(ExactStrategy s) {
  switch (s) {
    case ExactStrategy::Auto:
      return "auto";
    case ExactStrategy::Exhaustive:
      return "exhaustive";
    case ExactStrategy::BranchAndBound:
      return "bnb";
  }
  return "auto";
}

class Runner {
 public:
  Runner() {
    app_.require_subcommand(1, 1);
    app_.fallthrough();
    app_.add_option("--base", base_, "logarithm base (> 1)")->capture_default_str();
    app_.add_option("--format", format_, "output format")->check(CLI::IsMember({"json", "csv"}));
    app_.add_option("--threads", threads_, "worker threads for vertex enumeration")->capture_default_str();
    app_.add_option("--vertex-cap", vertex_cap_, "maximum number of vertices enumerated")->capture_default_str();
    app_.add_option("--budget", budget_, "exhaustive-search budget (assignments or DP cells)")->capture_default_str();

    auto* entropy = app_.add_subcommand("entropy", "Shannon entropy of --p, or joint measures of --joint");
    add_p(entropy, false);
    entropy->add_option("--joint", joint_, "joint distribution: 'a,b;c,d' or JSON file");

    auto* renyi = app_.add_subcommand("renyi", "Renyi entropy of --p or --joint");
    add_p(renyi, false);
    renyi->add_option("--joint", joint_, "joint distribution");
    renyi->add_option("--alpha", alpha_, "order alpha (number, 0 or inf)")->required();

    auto* tv = app_.add_subcommand("tv", "total variation distance");
    add_p(tv, true);
    add_q(tv);

    auto* kl = app_.add_subcommand("kl", "relative entropy D(P||Q)");
    add_p(kl, true);
    add_q(kl);

    auto* mec = app_.add_subcommand("mec", "minimum (alpha-)entropy coupling");
    add_p(mec, true);
    add_q(mec);
    mec->add_option("--alpha", alpha_, "order alpha (number, 0 or inf)")->capture_default_str();
    mec->add_option("--strategy", strategy_, "exact search strategy")
        ->check(CLI::IsMember({"auto", "exhaustive", "bnb"}))
        ->capture_default_str();
    mec->add_flag("--greedy", greedy_, "use the greedy heuristic instead of the exact solver");

    auto* maximal = app_.add_subcommand("maximal", "maximal coupling and total variation");
    add_p(maximal, true);
    add_q(maximal);

    auto* delta = app_.add_subcommand("delta", "Delta_p of --joint, or its minimum over couplings of --p and --q");
    add_p(delta, false);
    add_q(delta, false);
    delta->add_option("--joint", joint_, "joint distribution");
    delta->add_option("--pnorm", pnorm_, "order p >= 1 or inf")->capture_default_str();

    auto* bounds = app_.add_subcommand("bounds", "entropy-difference and Fano-type bounds");
    add_p(bounds, true);
    add_q(bounds);

    auto* channel = app_.add_subcommand("channel", "channel in C(P,m) maximizing mutual information");
    add_p(channel, true);
    channel->add_option("--m", m_, "number of outputs")->required()->check(CLI::PositiveNumber);

    auto* reduce = app_.add_subcommand("reduce", "decide a hard problem through its coupling encoding");
    reduce->require_subcommand(1, 1);
    auto* subset = reduce->add_subcommand("subset-sum", "Subset Sum via minimum entropy coupling");
    subset->add_option("--weights", weights_, "positive integers d_1,...,d_n")->required();
    subset->add_option("--target", target_, "target s")->required();
    auto* partition = reduce->add_subcommand("partition", "Partition via the optimal channel into 2 outputs");
    partition->add_option("--weights", weights_, "positive integers")->required();
    auto* three = reduce->add_subcommand("3partition", "3-Partition via the optimal channel into m outputs");
    three->add_option("--weights", weights_, "3m integers")->required();
    three->add_option("--k", k_, "group sum k")->required();
    three->add_option("--m", m_, "number of groups")->required();
    reduce->fallthrough();
    subset->fallthrough();
    partition->fallthrough();
    three->fallthrough();

    auto* counter = app_.add_subcommand("counterexample", "trace of a family with unbounded H_alpha over C(P,P)");
    counter->add_option("--alpha", family_alpha_, "order in (0,1)")->capture_default_str();
    counter->add_option("--beta", beta_, "tail exponent")->capture_default_str();
    counter->add_option("--r", r_, "corner exponent")->capture_default_str();
    counter->add_option("--N", truncation_, "truncation length")->capture_default_str();
    counter->add_option("--stages", stages_, "comma-separated increasing n")->capture_default_str();

    for (auto* sub : app_.get_subcommands({})) sub->fallthrough();
  }

  int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app_.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    }
    try {
      const nlohmann::json report = dispatch(out);
      if (!report.is_null()) out << report.dump(2) << "\n";
      return kExitOk;
    } catch (const LimitExceeded& e) {
      err << "error: " << e.what() << "\n";
      return kExitLimit;
    } catch (const ParseError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const NegativeMass& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const NotNormalized& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const InvalidP& e) {
      err << "usage error: --pnorm: " << e.what() << "\n";
      return kExitUsage;
    } catch (const InvariantViolation& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }

 private:
  void add_p(CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--p", p_, "distribution: '1/2,1/2' or JSON file");
    if (required) opt->required();
  }
  void add_q(CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--q", q_, "distribution: '1/2,1/2' or JSON file");
    if (required) opt->required();
  }

  bool csv() const { return format_ == "csv"; }
  LogBase base() const {
    try {
      return LogBase(base_);
    } catch (const OutOfRange& e) {
      throw ParseError(std::string("--base: ") + e.what());
    }
  }
  Dist p() const { return with_flag("--p", [&] { return load_dist(p_); }); }
  Dist q() const { return with_flag("--q", [&] { return load_dist(q_); }); }
  Joint joint() const { return with_flag("--joint", [&] { return load_joint(joint_); }); }

  ExactOptions exact_options() const {
    ExactOptions o;
    o.vertex_cap = vertex_cap_;
    o.threads = threads_ == 0 ? 1U : threads_;
    if (strategy_ == "exhaustive") o.strategy = ExactStrategy::Exhaustive;
    if (strategy_ == "bnb") o.strategy = ExactStrategy::BranchAndBound;
    return o;
  }

  static nlohmann::json solution_json(const CouplingSolution& s) {
    return {{"coupling", to_json(s.coupling)},
            {"objective", number_or_inf(s.objective_value)},
            {"certificate", s.certificate == Certificate::Exact ? "exact" : "heuristic"},
            {"vertex", s.vertex}};
  }

  // Scalar reports in CSV are "key,value" lines; matrices one row per line.
  nlohmann::json emit(std::ostream& out, nlohmann::json report, const Joint* matrix = nullptr) const {
    if (!csv()) return report;
    if (matrix != nullptr) {
      out << to_csv(*matrix);
      return nullptr;
    }
    for (const auto& [key, value] : report.items()) {
      if (value.is_primitive()) out << key << "," << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    return nullptr;
  }

  nlohmann::json dispatch(std::ostream& out) {
    const LogBase b = base();
    if (app_.got_subcommand("entropy")) {
      if (!joint_.empty()) {
        const Joint s = joint();
        const auto [mp, mq] = marginals(s);
        return emit(out, {{"joint_entropy", joint_entropy(s, b)},
                          {"h_x_given_y", conditional_entropy(s, Given::Columns, b)},
                          {"h_y_given_x", conditional_entropy(s, Given::Rows, b)},
                          {"mutual_information", mutual_information(s, b)},
                          {"h_p", shannon_entropy(mp, b)},
                          {"h_q", shannon_entropy(mq, b)}});
      }
      require_p("entropy");
      return emit(out, {{"entropy", shannon_entropy(p(), b)}});
    }
    if (app_.got_subcommand("renyi")) {
      const OrderAlpha alpha = parse_alpha(alpha_);
      if (joint_.empty()) require_p("renyi");
      const double v = joint_.empty() ? renyi_entropy(p(), alpha, b) : renyi_entropy(joint(), alpha, b);
      return emit(out, {{"renyi", v}, {"alpha", alpha_}});
    }
    if (app_.got_subcommand("tv")) return emit(out, {{"tv", to_string(total_variation(p(), q()))}});
    if (app_.got_subcommand("kl")) return emit(out, {{"kl", number_or_inf(kl_divergence(p(), q(), b))}});
    if (app_.got_subcommand("mec")) {
      const OrderAlpha alpha = parse_alpha(alpha_);
      const Dist pp = p();
      const Dist qq = q();
      if (greedy_ && !alpha.is_shannon()) throw ParseError("--greedy: only available for --alpha 1");
      const auto sol = greedy_ ? min_entropy_coupling_greedy(pp, qq, b)
                               : min_entropy_coupling_exact(pp, qq, alpha, b, exact_options());
      auto report = solution_json(sol);
      report["alpha"] = alpha_;
      report["base"] = base_;
      report["strategy"] = greedy_ ? "greedy" : strategy_;
      return emit(out, report, &sol.coupling);
    }
    if (app_.got_subcommand("maximal")) {
      const Dist pp = p();
      const Dist qq = q();
      const auto sol = maximal_coupling(pp, qq);
      return emit(out,
                  {{"coupling", to_json(sol.coupling)},
                   {"mismatch", to_string(mismatch_probability(sol.coupling))},
                   {"tv", to_string(total_variation(pp, qq))}},
                  &sol.coupling);
    }
    if (app_.got_subcommand("delta")) {
      const PNorm norm = parse_pnorm(pnorm_);
      if (!joint_.empty()) return emit(out, {{"delta", delta_p(joint(), norm, b)}, {"pnorm", pnorm_}});
      require_p("delta");
      if (q_.empty()) throw ParseError("--q is required with --p");
      const auto profile = lower_delta_profile(p(), q(), b, exact_options());
      return emit(out, {{"delta_lower", profile.at(norm)},
                        {"pnorm", pnorm_},
                        {"h_x_given_y", profile.conditionals.x_given_y},
                        {"h_y_given_x", profile.conditionals.y_given_x},
                        {"coupling", to_json(profile.coupling)}});
    }
    if (app_.got_subcommand("bounds")) {
      const auto report = bound_report(p(), q(), b, exact_options());
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : report.entries) {
        entries.push_back({{"name", e.name}, {"left", e.left}, {"right", e.right}, {"slack", e.slack}});
      }
      if (csv()) {
        out << "name,left,right,slack\n";
        for (const auto& e : report.entries) out << e.name << "," << e.left << "," << e.right << "," << e.slack << "\n";
        return nullptr;
      }
      return {{"bounds", entries}, {"holds", report.holds()}};
    }
    if (app_.got_subcommand("channel")) {
      const auto sol = optimal_channel(p(), m_, b, budget_);
      auto report = solution_json(sol);
      report["column_marginal"] = to_json(column_marginal(sol.coupling));
      return emit(out, report, &sol.coupling);
    }
    if (auto* reduce = app_.get_subcommand("reduce"); reduce->parsed()) return dispatch_reduce(*reduce, out);
    if (app_.got_subcommand("counterexample")) return dispatch_counterexample(out, b);
    throw ParseError("no subcommand");
  }

  nlohmann::json reduction_json(const ReductionOutcome& outcome, bool oracle) const {
    return {{"answer", outcome.answer},
            {"oracle", oracle},
            {"certificate", {{"groups", outcome.groups}, {"coupling", to_json(outcome.solution.coupling)},
                             {"objective", outcome.solution.objective_value}}}};
  }

  nlohmann::json dispatch_reduce(CLI::App& reduce, std::ostream& out) {
    const auto weights = parse_weights(weights_);
    nlohmann::json report;
    if (reduce.got_subcommand("subset-sum")) {
      const SubsetSumInstance inst(weights, target_);
      report = reduction_json(reduce_subset_sum(inst, exact_options()), dp_oracle_subset_sum(inst, budget_));
    } else if (reduce.got_subcommand("partition")) {
      report = reduction_json(reduce_partition(weights, budget_), dp_oracle_partition(weights, budget_));
    } else {
      const ThreePartitionInstance inst(weights, k_, m_);
      report = reduction_json(reduce_3partition(inst, budget_), exhaustive_oracle_3partition(inst));
    }
    return emit(out, report);
  }

  nlohmann::json dispatch_counterexample(std::ostream& out, LogBase b) {
    UnboundedFamilyParams params;
    params.alpha = family_alpha_;
    params.beta = beta_;
    params.r = r_;
    params.truncation = truncation_;
    const auto rows = divergence_trace(params, parse_stages(stages_), b);
    if (format_ != "json") {
      out << "n,H_alpha,lower_bound,H_alpha_P\n";
      out.precision(17);
      for (const auto& r : rows) out << r.n << "," << r.h_alpha << "," << r.lower_bound << "," << r.h_alpha_p << "\n";
      return nullptr;
    }
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& r : rows) {
      trace.push_back({{"n", r.n}, {"H_alpha", r.h_alpha}, {"lower_bound", r.lower_bound}, {"H_alpha_P", r.h_alpha_p}});
    }
    return {{"trace", trace}};
  }

  void require_p(const std::string& command) const {
    if (p_.empty()) throw ParseError(command + ": one of --p or --joint is required");
  }

  CLI::App app_{"Couplings of finite distributions and entropy distances", "mincoupling"};
  std::string p_;
  std::string q_;
  std::string joint_;
  std::string alpha_ = "1";
  std::string pnorm_ = "1";
  std::string strategy_ = "auto";
  bool greedy_ = false;
  double base_ = 2.0;
  std::string format_;
  unsigned threads_ = 1;
  std::size_t vertex_cap_ = kDefaultVertexCap;
  std::size_t budget_ = kDefaultChannelBudget;
  std::size_t m_ = 0;
  std::string weights_;
  std::uint64_t target_ = 0;
  std::uint64_t k_ = 0;
  double family_alpha_ = 0.4;
  double beta_ = 3.0;
  double r_ = 1.5;
  std::size_t truncation_ = 10'000;
  std::string stages_ = "10,100,1000";
};

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Runner runner;
  return runner.run(args, out, err);
}

}  // namespace mincoupling::cli
