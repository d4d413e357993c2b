#pragma once

// Integer view of a pair of rational marginals: every mass is multiplied by
// the lcm of all denominators. Vertices of an integral transportation
// polytope are integral, so vertex arithmetic stays in Int.

#include <cstdint>
#include <limits>
#include <vector>

#include "dist.hpp"

namespace mincoupling::detail {

template <class Int>
struct ScaledMarginals {
  std::vector<Int> rows;
  std::vector<Int> cols;
  Int scale;
};

inline BigInt common_denominator(std::span<const Rational> a, std::span<const Rational> b = {}) {
  BigInt l = 1;
  for (const auto& r : a) l = lcm(l, boost::multiprecision::denominator(r));
  for (const auto& r : b) l = lcm(l, boost::multiprecision::denominator(r));
  return l;
}

// Masses sum to one, so every scaled value (and every partial sum) is at
// most the scale itself.
inline bool fits_int64(const BigInt& scale) {
  return scale <= BigInt(std::numeric_limits<std::int64_t>::max() / 4);
}

template <class Int>
Int to_int(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return v.convert_to<Int>();
  }
}

template <class Int>
std::vector<Int> scale_masses(std::span<const Rational> masses, const BigInt& scale) {
  std::vector<Int> out;
  out.reserve(masses.size());
  for (const auto& r : masses) {
    BigInt v = boost::multiprecision::numerator(r) * (scale / boost::multiprecision::denominator(r));
    out.push_back(to_int<Int>(v));
  }
  return out;
}

template <class Int>
ScaledMarginals<Int> scale_pair(const Dist& p, const Dist& q, const BigInt& scale) {
  return {scale_masses<Int>(p.masses(), scale), scale_masses<Int>(q.masses(), scale), to_int<Int>(scale)};
}

template <class Int>
double ratio(const Int& v, const Int& scale) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return Rational(v, scale).template convert_to<double>();
  } else {
    return static_cast<double>(v) / static_cast<double>(scale);
  }
}

template <class Int>
Joint unscale(std::size_t rows, std::size_t cols, const std::vector<Int>& dense, const BigInt& scale) {
  std::vector<Rational> flat;
  flat.reserve(dense.size());
  for (const auto& v : dense) {
    if constexpr (std::is_same_v<Int, BigInt>) {
      flat.emplace_back(v, scale);
    } else {
      flat.emplace_back(BigInt(v), scale);
    }
  }
  return Joint(rows, cols, std::move(flat));
}

// Runs fn.template operator()<Int>(scale) with Int = int64 when the common
// denominator is small enough, BigInt otherwise.
template <class Fn>
decltype(auto) dispatch_scale(const BigInt& scale, Fn&& fn) {
  if (fits_int64(scale)) return fn.template operator()<std::int64_t>();
  return fn.template operator()<BigInt>();
}

}  // namespace mincoupling::detail
