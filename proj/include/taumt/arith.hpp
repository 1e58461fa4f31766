#pragma once

// Residue rings Z/p^m, p-adic valuations, Teichmuller characters, Dirichlet
// characters given by value tables, Bernoulli numbers, primitive roots and
// discrete logarithms.

#include "taumt/core.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace taumt {

/// The ring Z/p^m with p prime and m >= 1.
struct ResidueRing {
  std::int64_t prime = 2;
  int exponent = 1;
  std::int64_t modulus = 2;

  static ResidueRing prime_power(std::int64_t p, int m) {
    if (!detail::is_prime(p)) throw DomainError("ResidueRing: " + std::to_string(p) + " is not prime");
    if (m < 1) throw DomainError("ResidueRing: exponent must be >= 1");
    return ResidueRing{p, m, detail::ipow(p, m)};
  }

  /// Accepts any prime power N > 1.
  static ResidueRing of_modulus(std::int64_t n) {
    auto f = detail::factor(n);
    if (n < 2 || f.size() != 1) throw DomainError("ResidueRing: " + std::to_string(n) + " is not a prime power");
    return prime_power(f[0].first, f[0].second);
  }

  friend bool operator==(const ResidueRing&, const ResidueRing&) = default;
};

/// Element of Z/p^m, stored reduced in [0, p^m).
class Residue {
 public:
  Residue() = default;
  Residue(ResidueRing ring, std::int64_t v) : ring_(ring), value_(detail::mod(v, ring.modulus)) {}
  Residue(ResidueRing ring, const BigInt& v) : ring_(ring), value_(detail::bigint_mod(v, ring.modulus)) {}

  std::int64_t value() const { return value_; }
  const ResidueRing& ring() const { return ring_; }
  std::int64_t modulus() const { return ring_.modulus; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return value_ % ring_.prime != 0; }

  Residue inverse() const { return {ring_, detail::inverse_mod(value_, ring_.modulus)}; }
  Residue pow(std::uint64_t e) const { return {ring_, detail::pow_mod(value_, e, ring_.modulus)}; }

  Residue& operator+=(const Residue& o) {
    check(o);
    value_ = detail::mod(value_ + o.value_, ring_.modulus);
    return *this;
  }
  Residue& operator-=(const Residue& o) {
    check(o);
    value_ = detail::mod(value_ - o.value_, ring_.modulus);
    return *this;
  }
  Residue& operator*=(const Residue& o) {
    check(o);
    value_ = detail::mul_mod(value_, o.value_, ring_.modulus);
    return *this;
  }
  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  Residue operator-() const { return {ring_, -value_}; }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value_ << " mod " << r.ring_.modulus;
  }

 private:
  void check(const Residue& o) const {
    if (!(ring_ == o.ring_)) throw DomainError("Residue: mixed moduli");
  }

  ResidueRing ring_;
  std::int64_t value_ = 0;
};

/// p-adic valuation of an integer; infinity for 0.
inline ExtNat ord_p(const BigInt& x, std::int64_t p) {
  if (!detail::is_prime(p)) throw DomainError("ord_p: modulus is not prime");
  if (x == 0) return ExtNat::infinity();
  BigInt y = x;
  int e = 0;
  while (y % p == 0) {
    y /= p;
    ++e;
  }
  return ExtNat(e);
}

inline ExtNat ord_p(std::int64_t x, std::int64_t p) { return ord_p(BigInt(x), p); }

/// Valuation inside Z/p^m: min(true ord, m), with `saturated` set when the element is 0.
struct TruncatedValuation {
  int value = 0;
  bool saturated = false;
};

inline TruncatedValuation ord_truncated(const Residue& r) {
  const auto& ring = r.ring();
  if (r.is_zero()) return {ring.exponent, true};
  int e = 0;
  std::int64_t v = r.value();
  while (v % ring.prime == 0) {
    v /= ring.prime;
    ++e;
  }
  return {e, false};
}

/// Teichmuller lift of a unit: a^(p^(m-1)) mod p^m.
inline Residue teichmuller(std::int64_t a, std::int64_t p, int m) {
  auto ring = ResidueRing::prime_power(p, m);
  if (detail::mod(a, p) == 0) throw DomainError("teichmuller: argument divisible by p");
  return {ring, detail::pow_mod(a, static_cast<std::uint64_t>(detail::ipow(p, m - 1)), ring.modulus)};
}

/// Multiplicative order of a unit g modulo n.
inline std::int64_t multiplicative_order(std::int64_t g, std::int64_t n) {
  std::int64_t order = detail::euler_phi(n);
  for (auto [q, e] : detail::factor(order)) {
    (void)e;
    while (order % q == 0 && detail::pow_mod(g, static_cast<std::uint64_t>(order / q), n) == 1) order /= q;
  }
  return order;
}

/// Smallest positive generator of (Z/p^(n+1))^x.
inline std::int64_t primitive_root(std::int64_t p, int n) {
  if (p == 2 || !detail::is_prime(p)) throw DomainError("primitive_root: p must be an odd prime");
  if (n < 0) throw DomainError("primitive_root: negative level");
  const std::int64_t modulus = detail::ipow(p, n + 1);
  const std::int64_t phi = modulus / p * (p - 1);
  for (std::int64_t g = 2; g < modulus; ++g) {
    if (g % p == 0) continue;
    if (multiplicative_order(g, modulus) == phi) return g;
  }
  throw InternalError("primitive_root: no generator found");
}

/// Unique e in [0, ord(g)) with g^e = a mod `modulus`.
inline std::int64_t discrete_log(std::int64_t a, std::int64_t g, std::int64_t modulus) {
  a = detail::mod(a, modulus);
  if (std::gcd(a, modulus) != 1) throw DomainError("discrete_log: argument is not a unit");
  std::int64_t x = 1 % modulus;
  const std::int64_t phi = detail::euler_phi(modulus);
  for (std::int64_t e = 0; e < phi; ++e) {
    if (x == a) return e;
    x = detail::mul_mod(x, g, modulus);
  }
  throw DomainError("discrete_log: argument is not a power of the base");
}

/// Discrete logs for every unit modulo `modulus` w.r.t. a generator, built by one pass over the powers.
class DiscreteLogTable {
 public:
  DiscreteLogTable(std::int64_t generator, std::int64_t modulus)
      : generator_(generator), modulus_(modulus), log_(static_cast<std::size_t>(modulus), -1) {
    const std::int64_t phi = detail::euler_phi(modulus);
    std::int64_t x = 1 % modulus;
    for (std::int64_t e = 0; e < phi; ++e) {
      if (log_[x] != -1) throw DomainError("DiscreteLogTable: base is not a generator");
      log_[x] = e;
      x = detail::mul_mod(x, generator, modulus);
    }
  }

  std::int64_t operator()(std::int64_t a) const {
    std::int64_t v = log_[static_cast<std::size_t>(detail::mod(a, modulus_))];
    if (v < 0) throw DomainError("discrete_log: argument is not a unit");
    return v;
  }
  std::int64_t generator() const { return generator_; }
  std::int64_t modulus() const { return modulus_; }

 private:
  std::int64_t generator_;
  std::int64_t modulus_;
  std::vector<std::int64_t> log_;
};

/// Classical Bernoulli number B_k (B_1 = -1/2) from sum_{j<=k} C(k+1, j) B_j = 0.
inline Rational bernoulli(int k) {
  if (k < 0) throw DomainError("bernoulli: negative index");
  std::vector<Rational> b(static_cast<std::size_t>(k + 1));
  b[0] = 1;
  for (int n = 1; n <= k; ++n) {
    Rational acc = 0;
    BigInt binom = 1;  // C(n+1, j)
    for (int j = 0; j < n; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    b[n] = -acc / Rational(n + 1);
  }
  return b[k];
}

/// Dirichlet character with values in Z/p^m, stored as a full value table mod its modulus.
class DirichletCharacter {
 public:
  /// The trivial character of modulus 1.
  static DirichletCharacter trivial(ResidueRing ring) {
    return DirichletCharacter(1, ring, std::vector<std::int64_t>{1 % ring.modulus});
  }

  /// Tabulates `f` on units mod `modulus` (0 elsewhere) and validates it is a character.
  static DirichletCharacter from_function(std::int64_t modulus, ResidueRing ring,
                                          const std::function<Residue(std::int64_t)>& f) {
    if (modulus < 1) throw DomainError("DirichletCharacter: modulus must be >= 1");
    std::vector<std::int64_t> table(static_cast<std::size_t>(modulus), 0);
    for (std::int64_t a = 0; a < modulus; ++a) {
      if (std::gcd(a, modulus) != 1) continue;
      Residue v = f(a);
      if (!(v.ring() == ring)) throw DomainError("DirichletCharacter: value in wrong ring");
      table[a] = v.value();
    }
    DirichletCharacter chi(modulus, ring, std::move(table));
    chi.validate();
    return chi;
  }

  /// omega_p^j as a character of modulus p (zero on multiples of p, also for j = 0 mod p-1).
  static DirichletCharacter teichmuller_power(std::int64_t p, int j, ResidueRing ring) {
    if (ring.prime != p) throw DomainError("teichmuller_power: ring must be Z/p^m");
    const int e = static_cast<int>(detail::mod(j, p - 1));
    return from_function(p, ring, [&](std::int64_t a) {
      return teichmuller(a, p, ring.exponent).pow(static_cast<std::uint64_t>(e));
    });
  }

  std::int64_t modulus() const { return modulus_; }
  const ResidueRing& ring() const { return ring_; }

  Residue operator()(std::int64_t n) const {
    return {ring_, table_[static_cast<std::size_t>(detail::mod(n, modulus_))]};
  }
  /// chi^{-1}(n) for units; 0 on non-units.
  Residue inverse_value(std::int64_t n) const {
    Residue v = (*this)(n);
    return v.is_zero() ? v : v.inverse();
  }

  /// chi(-1) as +1 or -1.
  int parity() const {
    Residue v = (*this)(-1);
    if (v.value() == 1 % ring_.modulus) return 1;
    if ((-v).value() == 1 % ring_.modulus) return -1;
    throw InternalError("DirichletCharacter: chi(-1) is not +-1");
  }

  /// True iff the character is 1 on every unit.
  bool is_principal() const {
    for (std::int64_t a = 0; a < modulus_; ++a)
      if (std::gcd(a, modulus_) == 1 && table_[a] != 1 % ring_.modulus) return false;
    return true;
  }
  bool is_trivial() const { return modulus_ == 1; }

  /// Smallest d | modulus such that chi is 1 on units congruent to 1 mod d.
  std::int64_t conductor() const {
    for (std::int64_t d = 1; d <= modulus_; ++d) {
      if (modulus_ % d != 0) continue;
      bool ok = true;
      for (std::int64_t a = 1; a < modulus_ && ok; a += d)
        if (std::gcd(a, modulus_) == 1 && table_[a] != 1 % ring_.modulus) ok = false;
      if (ok) return d;
    }
    return modulus_;
  }

  /// The character composed with reduction Z/M -> Z/modulus; requires modulus | M.
  DirichletCharacter induced(std::int64_t m) const {
    if (m % modulus_ != 0) throw DomainError("DirichletCharacter::induced: modulus does not divide target");
    return from_function(m, ring_, [&](std::int64_t a) { return (*this)(a); });
  }

  /// Pointwise product on the lcm of the moduli.
  friend DirichletCharacter operator*(const DirichletCharacter& x, const DirichletCharacter& y) {
    if (!(x.ring_ == y.ring_)) throw DomainError("DirichletCharacter: mixed value rings");
    const std::int64_t m = std::lcm(x.modulus_, y.modulus_);
    return from_function(m, x.ring_, [&](std::int64_t a) { return x(a) * y(a); });
  }

 private:
  DirichletCharacter(std::int64_t modulus, ResidueRing ring, std::vector<std::int64_t> table)
      : modulus_(modulus), ring_(ring), table_(std::move(table)) {}

  void validate() const {
    const std::int64_t one = 1 % ring_.modulus;
    if (modulus_ == 1) {
      if (table_[0] != one) throw DomainError("DirichletCharacter: chi(1) != 1");
      return;
    }
    for (std::int64_t a = 0; a < modulus_; ++a) {
      const bool unit = std::gcd(a, modulus_) == 1;
      if (unit && table_[a] % ring_.prime == 0) throw DomainError("DirichletCharacter: non-unit value on a unit");
      if (!unit && table_[a] != 0) throw DomainError("DirichletCharacter: nonzero value on a non-unit");
    }
    if (table_[1] != one) throw DomainError("DirichletCharacter: chi(1) != 1");
    for (std::int64_t a = 1; a < modulus_; ++a) {
      if (table_[a] == 0) continue;
      for (std::int64_t b = a; b < modulus_; ++b) {
        if (table_[b] == 0) continue;
        const std::int64_t ab = detail::mul_mod(a, b, modulus_);
        if (table_[ab] != detail::mul_mod(table_[a], table_[b], ring_.modulus))
          throw DomainError("DirichletCharacter: table is not multiplicative");
      }
    }
  }

  std::int64_t modulus_;
  ResidueRing ring_;
  std::vector<std::int64_t> table_;
};

}  // namespace taumt
