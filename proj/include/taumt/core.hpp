#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace taumt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Request for a case the library deliberately does not implement.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A consistency check inside the library failed. Indicates a bug or corrupt input data.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Nonnegative integer extended by +infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(int v) : value_(v) {  // NOLINT(google-explicit-constructor)
    if (v < 0) throw DomainError("ExtNat: negative value");
  }
  static constexpr ExtNat infinity() {
    ExtNat e;
    e.value_ = kInf;
    return e;
  }

  constexpr bool is_infinite() const { return value_ == kInf; }
  int value() const {
    if (is_infinite()) throw DomainError("ExtNat: value of infinity");
    return value_;
  }
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

  friend constexpr bool operator==(ExtNat, ExtNat) = default;
  friend constexpr auto operator<=>(ExtNat a, ExtNat b) { return a.value_ <=> b.value_; }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int value_ = 0;
};

namespace detail {

/// Nonnegative remainder of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

constexpr std::int64_t pow_mod(std::int64_t base, std::uint64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t result = 1;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1U;
  }
  return result;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
constexpr std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  auto [g, x, y] = ext_gcd(mod(a, m), m);
  (void)y;
  if (g != 1) throw DomainError("inverse_mod: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod(x, m);
}

constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Prime factorization by trial division, ascending primes with multiplicity.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (n < 0) n = -n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [q, e] : factor(n)) r = r / q * (q - 1);
  return r;
}

/// Smallest-prime-factor sieve on [0, n].
inline std::vector<std::int32_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
  }
  return spf;
}

inline std::int64_t bigint_mod(const BigInt& x, std::int64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace detail
}  // namespace taumt
