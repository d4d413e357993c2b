#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mincoupling {

// Indices (0-based) of the strictly positive masses.
struct Support {
  std::vector<std::size_t> indices;
  std::size_t size() const noexcept { return indices.size(); }
};

namespace detail {

inline void validate_masses(std::span<const Rational> masses) {
  if (masses.empty()) throw ZeroLength();
  Rational total = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] < 0) throw NegativeMass("entry " + std::to_string(i) + " = " + to_string(masses[i]));
    total += masses[i];
  }
  if (total != 1) throw NotNormalized("sum is " + to_string(total));
}

}  // namespace detail

// Finite probability vector with exact masses. Zero masses are kept in place.
class Dist {
 public:
  explicit Dist(std::vector<Rational> masses) : masses_(std::move(masses)) {
    detail::validate_masses(masses_);
  }

  std::size_t size() const noexcept { return masses_.size(); }
  const Rational& operator[](std::size_t i) const { return masses_[i]; }
  std::span<const Rational> masses() const noexcept { return masses_; }

  Support support() const {
    Support s;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
      if (masses_[i] > 0) s.indices.push_back(i);
    }
    return s;
  }
  std::size_t support_size() const {
    return static_cast<std::size_t>(
        std::count_if(masses_.begin(), masses_.end(), [](const Rational& r) { return r > 0; }));
  }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(masses_.size());
    for (const auto& r : masses_) out.push_back(to_double(r));
    return out;
  }

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  std::vector<Rational> masses_;
};

// Finite bivariate distribution, stored row-major.
class Joint {
 public:
  Joint(std::size_t rows, std::size_t cols, std::vector<Rational> masses)
      : rows_(rows), cols_(cols), masses_(std::move(masses)) {
    if (rows_ == 0 || cols_ == 0) throw ZeroLength();
    if (masses_.size() != rows_ * cols_) {
      throw DimensionMismatch("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                              std::to_string(masses_.size()));
    }
    detail::validate_masses(masses_);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Rational& at(std::size_t i, std::size_t j) const { return masses_[i * cols_ + j]; }
  std::span<const Rational> flat() const noexcept { return masses_; }
  std::span<const Rational> row(std::size_t i) const {
    return std::span<const Rational>(masses_).subspan(i * cols_, cols_);
  }

  Joint transposed() const {
    std::vector<Rational> t(masses_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = at(i, j);
    return Joint(cols_, rows_, std::move(t));
  }

  friend bool operator==(const Joint&, const Joint&) = default;
  // Row-major lexicographic order on entries (dimensions first).
  friend bool operator<(const Joint& a, const Joint& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return std::lexicographical_compare(a.masses_.begin(), a.masses_.end(), b.masses_.begin(),
                                        b.masses_.end());
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> masses_;
};

inline Dist make_dist(std::vector<Rational> masses) { return Dist(std::move(masses)); }

inline Joint make_joint(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) throw ZeroLength();
  const std::size_t cols = rows.front().size();
  std::vector<Rational> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Joint(rows.size(), cols, std::move(flat));
}

inline Dist uniform(std::size_t m) {
  if (m == 0) throw ZeroLength();
  return Dist(std::vector<Rational>(m, Rational(1, static_cast<long long>(m))));
}

inline Joint product(const Dist& p, const Dist& q) {
  std::vector<Rational> flat;
  flat.reserve(p.size() * q.size());
  for (const auto& pi : p.masses())
    for (const auto& qj : q.masses()) flat.push_back(pi * qj);
  return Joint(p.size(), q.size(), std::move(flat));
}

// diag(P): mass p_i at (i, i).
inline Joint diagonal(const Dist& p) {
  std::vector<Rational> flat(p.size() * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) flat[i * p.size() + i] = p[i];
  return Joint(p.size(), p.size(), std::move(flat));
}

inline Dist row_marginal(const Joint& s) {
  std::vector<Rational> r(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) r[i] += s.at(i, j);
  return Dist(std::move(r));
}

inline Dist column_marginal(const Joint& s) {
  std::vector<Rational> c(s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) c[j] += s.at(i, j);
  return Dist(std::move(c));
}

inline std::pair<Dist, Dist> marginals(const Joint& s) { return {row_marginal(s), column_marginal(s)}; }

inline Dist flatten(const Joint& s) { return Dist(std::vector<Rational>(s.flat().begin(), s.flat().end())); }

// True iff the multisets of strictly positive masses coincide.
inline bool is_permutation_of(const Dist& p, const Dist& q) {
  auto positive_sorted = [](const Dist& d) {
    std::vector<Rational> v;
    for (const auto& r : d.masses())
      if (r > 0) v.push_back(r);
    std::sort(v.begin(), v.end());
    return v;
  };
  return positive_sorted(p) == positive_sorted(q);
}

}  // namespace mincoupling
