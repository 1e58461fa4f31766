#pragma once

// q-expansions: Ramanujan's tau, divisor-sum Eisenstein coefficients,
// eigenform recurrences from prime data, and congruence scanners.

#include "taumt/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace taumt {

template <class Coeff>
struct QExpansion {
  std::vector<Coeff> coeffs;  // index n = 0..N
  int weight = 0;
  std::string label;

  std::int64_t bound() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }
  const Coeff& operator[](std::size_t n) const { return coeffs[n]; }
};

/// tau(1..N) from q * prod (1 - q^n)^24.
///
/// The cube of the Euler product is the sparse series sum (-1)^j (2j+1) q^{j(j+1)/2};
/// its 8th power follows from the power recurrence n f_0 g_n = sum_j (9j - n) f_j g_{n-j}.
inline QExpansion<BigInt> tau_expansion(std::int64_t n_max) {
  if (n_max < 1) throw DomainError("tau_expansion: bound must be >= 1");
  const std::int64_t len = n_max;  // g_0 .. g_{N-1}
  std::vector<std::pair<std::int64_t, std::int64_t>> cube;  // (exponent, coefficient), exponent >= 1
  for (std::int64_t j = 1;; ++j) {
    const std::int64_t e = j * (j + 1) / 2;
    if (e >= len) break;
    cube.emplace_back(e, (j % 2 == 0 ? 1 : -1) * (2 * j + 1));
  }
  std::vector<BigInt> g(static_cast<std::size_t>(len));
  g[0] = 1;
  for (std::int64_t n = 1; n < len; ++n) {
    BigInt acc = 0;
    for (auto [j, fj] : cube) {
      if (j > n) break;
      acc += BigInt(9 * j - n) * fj * g[n - j];
    }
    g[n] = acc / n;
  }
  QExpansion<BigInt> out;
  out.weight = 12;
  out.label = "Delta";
  out.coeffs.assign(static_cast<std::size_t>(n_max + 1), BigInt(0));
  for (std::int64_t n = 1; n <= n_max; ++n) out.coeffs[n] = g[n - 1];
  return out;
}

/// c_n = sum_{d | n} psi(n/d) chi(d) d^{k-1} for n = 1..N, with no hypothesis checks and c_0 = 0.
inline QExpansion<Residue> divisor_sum_coeffs(int k, const DirichletCharacter& psi, const DirichletCharacter& chi,
                                              std::int64_t n_max) {
  if (!(psi.ring() == chi.ring())) throw DomainError("divisor_sum_coeffs: characters in different rings");
  if (k < 1) throw DomainError("divisor_sum_coeffs: weight must be >= 1");
  const ResidueRing ring = psi.ring();
  const std::int64_t m = ring.modulus;
  std::vector<std::int64_t> acc(static_cast<std::size_t>(n_max + 1), 0);
  for (std::int64_t d = 1; d <= n_max; ++d) {
    const std::int64_t chi_d = chi(d).value();
    if (chi_d == 0) continue;
    const std::int64_t term = detail::mul_mod(chi_d, detail::pow_mod(d, static_cast<std::uint64_t>(k - 1), m), m);
    for (std::int64_t q = 1; q * d <= n_max; ++q) {
      const std::int64_t psi_q = psi(q).value();
      if (psi_q == 0) continue;
      acc[q * d] = (acc[q * d] + detail::mul_mod(psi_q, term, m)) % m;
    }
  }
  QExpansion<Residue> out;
  out.weight = k;
  out.label = "E";
  out.coeffs.reserve(acc.size());
  for (auto v : acc) out.coeffs.emplace_back(ring, v);
  return out;
}

/// Coefficients of E_{k, psi, chi} in the characters' value ring.
///
/// The level of psi is its modulus; the constant term is 0 when that is > 1 and
/// -B_k / 2k for psi = chi = 1.
inline QExpansion<Residue> eisenstein_coeffs(int k, const DirichletCharacter& psi, const DirichletCharacter& chi,
                                             std::int64_t n_max) {
  if (k < 1) throw DomainError("eisenstein_coeffs: weight must be >= 1");
  const int sign = (k % 2 == 0) ? 1 : -1;
  if (psi.parity() * chi.parity() != sign) throw DomainError("eisenstein_coeffs: parity psi*chi(-1) != (-1)^k");
  if (psi.is_trivial() && chi.is_trivial() && k == 2) throw DomainError("eisenstein_coeffs: E_{2,1,1} is excluded");
  auto out = divisor_sum_coeffs(k, psi, chi, n_max);
  if (psi.modulus() == 1) {
    if (!chi.is_trivial())
      throw UnsupportedError("eisenstein_coeffs: generalized Bernoulli numbers for nontrivial chi are not supported");
    const Rational c0 = -bernoulli(k) / Rational(2 * k);
    const BigInt den = boost::multiprecision::denominator(c0);
    if (den % psi.ring().prime == 0) throw DomainError("eisenstein_coeffs: constant term is not p-integral");
    const std::int64_t m = psi.ring().modulus;
    const std::int64_t num = detail::bigint_mod(boost::multiprecision::numerator(c0), m);
    out.coeffs[0] = Residue(psi.ring(), detail::mul_mod(num, detail::inverse_mod(detail::bigint_mod(den, m), m), m));
  }
  out.label = "E_{" + std::to_string(k) + "}";
  return out;
}

namespace detail {

template <class T, class HeckeTerm>
QExpansion<T> eigenform_from_primes(const std::map<std::int64_t, T>& prime_coeffs, std::int64_t n_max, T zero, T one,
                                    HeckeTerm hecke_term) {
  QExpansion<T> out;
  out.coeffs.assign(static_cast<std::size_t>(n_max + 1), zero);
  if (n_max >= 1) out.coeffs[1] = one;
  const auto spf = smallest_prime_factors(n_max);
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[n];
    std::int64_t pr = 1, rest = n;
    int r = 0;
    while (rest % p == 0) {
      rest /= p;
      pr *= p;
      ++r;
    }
    if (rest > 1) {
      out.coeffs[n] = out.coeffs[pr] * out.coeffs[rest];
    } else if (r == 1) {
      auto it = prime_coeffs.find(p);
      if (it == prime_coeffs.end()) throw DomainError("coeffs_from_prime_data: missing coefficient at prime " + std::to_string(p));
      out.coeffs[n] = it->second;
    } else {
      out.coeffs[n] = out.coeffs[p] * out.coeffs[pr / p] - hecke_term(p) * out.coeffs[pr / p / p];
    }
  }
  return out;
}

}  // namespace detail

/// Level-1 eigenform coefficients over Z from a_p, via multiplicativity and
/// a_{p^{r+1}} = a_p a_{p^r} - p^{k-1} a_{p^{r-1}}.
inline QExpansion<BigInt> coeffs_from_prime_data(const std::map<std::int64_t, BigInt>& prime_coeffs, int k,
                                                 std::int64_t n_max) {
  auto out = detail::eigenform_from_primes<BigInt>(prime_coeffs, n_max, BigInt(0), BigInt(1), [k](std::int64_t p) -> BigInt {
    return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k - 1));
  });
  out.weight = k;
  return out;
}

/// Same recurrence with nebentypus chi, over chi's value ring.
inline QExpansion<Residue> coeffs_from_prime_data(const std::map<std::int64_t, Residue>& prime_coeffs, int k,
                                                  const DirichletCharacter& chi, std::int64_t n_max) {
  const ResidueRing ring = chi.ring();
  auto out = detail::eigenform_from_primes<Residue>(
      prime_coeffs, n_max, Residue(ring, 0), Residue(ring, 1), [&](std::int64_t p) -> Residue {
        return chi(p) * Residue(ring, detail::pow_mod(p, static_cast<std::uint64_t>(k - 1), ring.modulus));
      });
  out.weight = k;
  return out;
}

/// E_{k,a,b} for a prime p: psi = omega_p^a of modulus p, chi = omega_p^b (trivial when b = 0 mod p-1).
inline std::pair<DirichletCharacter, DirichletCharacter> teichmuller_pair(std::int64_t p, int a, int b, int m = 1) {
  const auto ring = ResidueRing::prime_power(p, m);
  auto psi = DirichletCharacter::teichmuller_power(p, a, ring);
  auto chi = detail::mod(b, p - 1) == 0 ? DirichletCharacter::trivial(ring)
                                        : DirichletCharacter::teichmuller_power(p, b, ring);
  return {std::move(psi), std::move(chi)};
}

/// Whether (p, k, a, b) lies in one of the two congruence classes for which tau = c_{k,a,b} mod p.
inline bool tau_congruence_admissible(std::int64_t p, int k, int a, int b) {
  const std::int64_t s = detail::mod(b + k, p - 1);
  if (p == 3 || p == 5) return (a == 1 && s == detail::mod(3, p - 1)) || (a == 2 && s == detail::mod(2, p - 1));
  if (p == 7) return (a == 1 && s == 5) || (a == 4 && s == 2);
  return false;
}

/// All admissible (k, a, b) with 2 <= k <= k_max and 0 <= b <= p-1.
inline std::vector<std::array<int, 3>> admissible_classes(std::int64_t p, int k_max) {
  std::vector<std::array<int, 3>> out;
  for (int k = 2; k <= k_max; ++k)
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        if (tau_congruence_admissible(p, k, a, b)) out.push_back({k, a, b});
  return out;
}

struct TauCongruenceReport {
  std::int64_t p = 0;
  int k = 0, a = 0, b = 0;
  std::int64_t bound = 0;
  bool admissible = false;
  bool congruent = false;
  std::optional<std::int64_t> first_counterexample;
  std::int64_t tau_residue = 0;  // at the counterexample
  std::int64_t eisenstein_residue = 0;
};

/// Compares tau(n) with c_{k,a,b,n} mod p for n = 0..bound against a precomputed tau stream.
/// Inadmissible or parity-violating tuples are scanned too; `admissible` records the hypothesis.
inline TauCongruenceReport verify_tau_congruence(const QExpansion<BigInt>& tau, std::int64_t p, int k, int a, int b,
                                                 std::int64_t bound) {
  if (bound > tau.bound()) throw DomainError("verify_tau_congruence: tau stream too short");
  TauCongruenceReport rep{p, k, a, b, bound, tau_congruence_admissible(p, k, a, b), true, std::nullopt, 0, 0};
  auto [psi, chi] = teichmuller_pair(p, a, b);
  const auto eis = divisor_sum_coeffs(k, psi, chi, bound);
  for (std::int64_t n = 0; n <= bound; ++n) {
    const std::int64_t t = detail::bigint_mod(tau.coeffs[n], p);
    if (t != eis.coeffs[n].value()) {
      rep.congruent = false;
      rep.first_counterexample = n;
      rep.tau_residue = t;
      rep.eisenstein_residue = eis.coeffs[n].value();
      break;
    }
  }
  return rep;
}

inline TauCongruenceReport verify_tau_congruence(std::int64_t p, int k, int a, int b, std::int64_t bound) {
  return verify_tau_congruence(tau_expansion(std::max<std::int64_t>(bound, 1)), p, k, a, b, bound);
}

/// tau(l) = l^e1 + l^e2 (mod modulus) for primes l.
struct SerreCongruence {
  std::int64_t modulus = 0;
  int e1 = 0, e2 = 0;
};

struct SerreReport {
  SerreCongruence congruence;
  std::int64_t primes_checked = 0;
  std::optional<std::int64_t> first_failure;
};

inline std::vector<SerreReport> verify_serre_congruences(const QExpansion<BigInt>& tau,
                                                         std::span<const SerreCongruence> congruences,
                                                         std::int64_t bound) {
  if (bound < 2) throw DomainError("verify_serre_congruences: bound must be >= 2");
  if (bound > tau.bound()) throw DomainError("verify_serre_congruences: tau stream too short");
  std::vector<SerreReport> out;
  for (const auto& c : congruences) {
    SerreReport rep{c, 0, std::nullopt};
    for (std::int64_t l = 2; l <= bound; ++l) {
      if (!detail::is_prime(l)) continue;
      ++rep.primes_checked;
      const std::int64_t rhs = (detail::pow_mod(l, static_cast<std::uint64_t>(c.e1), c.modulus) +
                                detail::pow_mod(l, static_cast<std::uint64_t>(c.e2), c.modulus)) % c.modulus;
      if (detail::bigint_mod(tau.coeffs[l], c.modulus) != rhs) {
        rep.first_failure = l;
        break;
      }
    }
    out.push_back(rep);
  }
  return out;
}

}  // namespace taumt
