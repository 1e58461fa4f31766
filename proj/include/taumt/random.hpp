#pragma once

// Seeded generators for cusps, divisors and congruence-subgroup elements.

#include "taumt/cusps.hpp"

#include <random>

namespace taumt::gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// a/c with 1 <= c <= max_den and |a| <= spread * c, occasionally infinity.
inline CuspPoint cusp(Rng& rng, std::int64_t max_den = 1000, std::int64_t spread = 3) {
  if (uniform(rng, 0, 49) == 0) return CuspPoint::infinity();
  for (;;) {
    const std::int64_t c = uniform(rng, 1, max_den);
    const std::int64_t a = uniform(rng, -spread * c, spread * c);
    if (std::gcd(a, c) == 1) return CuspPoint::make(a, c);
  }
}

/// Random element of SL_2(Z) as a word in T^{+-k} and S.
inline Mat2 sl2(Rng& rng, int length = 6, std::int64_t max_shift = 4) {
  Mat2 g;
  for (int i = 0; i < length; ++i) {
    const std::int64_t k = uniform(rng, -max_shift, max_shift);
    g = g * Mat2{1, k, 0, 1} * mats::S;
  }
  return g;
}

/// Random element of Gamma_1(N): [[1 + kN, b], [cN, d]] completed to determinant 1.
inline Mat2 gamma1(Rng& rng, std::int64_t n, std::int64_t range = 20) {
  for (;;) {
    const std::int64_t a = 1 + n * uniform(rng, -range, range);
    const std::int64_t c = n * uniform(rng, -range, range);
    if (std::gcd(a, c) != 1) continue;
    // b, d with a d - b c = 1; then d = 1 mod N follows from a = 1 mod N.
    auto [g, x, y] = detail::ext_gcd(a, -c);
    (void)g;
    std::int64_t d = x, b = y;
    const std::int64_t shift = uniform(rng, -range, range);
    d += shift * c;
    b += shift * a;
    return Mat2{a, b, c, d};
  }
}

/// {r} - {s} for two random cusps.
inline Divisor0 divisor_pair(Rng& rng, std::int64_t max_den = 1000) {
  return Divisor0::difference(cusp(rng, max_den), cusp(rng, max_den));
}

/// Random degree-0 divisor with up to `terms` + 1 points.
inline Divisor0 divisor(Rng& rng, int terms = 3, std::int64_t max_den = 1000) {
  Divisor d;
  std::int64_t total = 0;
  for (int i = 0; i < terms; ++i) {
    const std::int64_t n = uniform(rng, -3, 3);
    d.add(cusp(rng, max_den), n);
    total += n;
  }
  d.add(cusp(rng, max_den), -total);
  if (d.degree() != 0) throw InternalError("gen::divisor: degree drift");
  return Divisor0(d);
}

}  // namespace taumt::gen
