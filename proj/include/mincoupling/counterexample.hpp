#pragma once

// A family S_n in C(P,P) with H_alpha(P) finite but H_alpha(S_n) growing
// without bound, for alpha in (0,1). P is p_i proportional to i^-beta,
// truncated to N terms and renormalized. S_n is the constant p_n n^-r on the
// n x n corner plus the normalized product of the corner's residual
// marginals, and diag(p_i) beyond the corner.
//
// Masses are irrational for non-integer r, so this module works in double
// precision with a structured (non-dense) representation.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "info.hpp"
#include "numeric.hpp"

namespace mincoupling {

struct UnboundedFamilyParams {
  double alpha = 0.4;
  double beta = 3.0;
  double r = 1.5;
  std::size_t n = 10;
  std::size_t truncation = 10'000;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvariantViolation("alpha must lie in (0,1)");
    if (!(beta > 1.0)) throw InvariantViolation("beta must exceed 1");
    if (!(r > 1.0)) throw InvariantViolation("r must exceed 1");
    if (!(beta * alpha > 1.0)) throw InvariantViolation("beta * alpha must exceed 1");
    if (!(r + beta < 2.0 / alpha)) {
      throw InvariantViolation("r + beta = " + std::to_string(r + beta) + " must be < 2/alpha = " + std::to_string(2.0 / alpha));
    }
    if (n == 0 || truncation < n) throw InvariantViolation("need 1 <= n <= N");
  }
};

// p_i = i^-beta / Z for i = 1..N, summed smallest-first.
inline std::vector<double> power_law(double beta, std::size_t truncation) {
  std::vector<double> p(truncation);
  CompensatedSum z;
  for (std::size_t i = truncation; i >= 1; --i) {
    p[i - 1] = std::pow(static_cast<double>(i), -beta);
    z += p[i - 1];
  }
  const double total = z.value();
  for (auto& x : p) x /= total;
  return p;
}

class UnboundedStage {
 public:
  explicit UnboundedStage(const UnboundedFamilyParams& params) : params_(params) {
    params.validate();
    p_ = power_law(params.beta, params.truncation);
    const std::size_t n = params.n;
    corner_ = p_[n - 1] * std::pow(static_cast<double>(n), -params.r);
    residual_.resize(n);
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
      // p_i >= p_n >= n * corner since r > 1.
      residual_[i] = std::max(0.0, p_[i] - static_cast<double>(n) * corner_);
      total += residual_[i];
    }
    residual_total_ = total.value();
  }

  const UnboundedFamilyParams& params() const noexcept { return params_; }
  const std::vector<double>& marginal() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double corner_constant() const noexcept { return corner_; }

  double at(std::size_t i, std::size_t j) const {
    const std::size_t n = params_.n;
    if (i < n && j < n) return corner_ + correction(i, j);
    return i == j ? p_[i] : 0.0;
  }

  // Largest absolute deviation of any row or column sum from p. The matrix
  // is symmetric by construction, so rows suffice.
  double max_marginal_error() const {
    const std::size_t n = params_.n;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CompensatedSum row;
      for (std::size_t j = 0; j < n; ++j) row += at(i, j);
      worst = std::max(worst, std::abs(row.value() - p_[i]));
    }
    return worst;
  }

  double renyi(LogBase base = kBits) const {
    const double a = params_.alpha;
    const std::size_t n = params_.n;
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
      CompensatedSum row;
      row += 0.5 * std::pow(at(i, i), a);
      for (std::size_t j = i + 1; j < n; ++j) row += std::pow(at(i, j), a);
      sum += 2.0 * row.value();
    }
    for (std::size_t i = n; i < p_.size(); ++i) sum += std::pow(p_[i], a);
    return base.log(sum.value()) / (1.0 - a);
  }

  // (1/(1-alpha)) log(n^(2 - r alpha) p_n^alpha).
  double lower_bound(LogBase base = kBits) const {
    const double a = params_.alpha;
    const auto n = static_cast<double>(params_.n);
    return ((2.0 - params_.r * a) * base.log(n) + a * base.log(p_[params_.n - 1])) / (1.0 - a);
  }

  double marginal_renyi(LogBase base = kBits) const { return renyi_of(p_, OrderAlpha(params_.alpha), base); }

  std::vector<std::vector<double>> dense() const {
    std::vector<std::vector<double>> out(p_.size(), std::vector<double>(p_.size(), 0.0));
    for (std::size_t i = 0; i < p_.size(); ++i)
      for (std::size_t j = 0; j < p_.size(); ++j) out[i][j] = at(i, j);
    return out;
  }

 private:
  double correction(std::size_t i, std::size_t j) const {
    if (residual_total_ <= 0.0) return 0.0;
    return residual_[i] * residual_[j] / residual_total_;
  }

  UnboundedFamilyParams params_;
  std::vector<double> p_;
  double corner_ = 0.0;
  std::vector<double> residual_;
  double residual_total_ = 0.0;
};

inline UnboundedStage build_stage(const UnboundedFamilyParams& params) { return UnboundedStage(params); }

struct TraceRow {
  std::size_t n;
  double h_alpha;
  double lower_bound;
  double h_alpha_p;
};

inline std::vector<TraceRow> divergence_trace(UnboundedFamilyParams base_params, const std::vector<std::size_t>& stages,
                                              LogBase base = kBits) {
  for (std::size_t k = 1; k < stages.size(); ++k) {
    if (stages[k] <= stages[k - 1]) throw InvariantViolation("stages must be strictly increasing");
  }
  std::vector<TraceRow> rows;
  rows.reserve(stages.size());
  for (auto n : stages) {
    base_params.n = n;
    const UnboundedStage stage(base_params);
    rows.push_back({n, stage.renyi(base), stage.lower_bound(base), stage.marginal_renyi(base)});
  }
  return rows;
}

}  // namespace mincoupling
