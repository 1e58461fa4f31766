#pragma once

// Weight-0 boundary modular symbols: functions on cusps, constant on
// Gamma_1(N)-orbits, with values in Z/p^m.

#include "taumt/arith.hpp"
#include "taumt/cusps.hpp"

#include <string>
#include <utility>
#include <vector>

namespace taumt {

class BoundarySymbol {
 public:
  enum class Provenance { eisenstein, explicit_table };

  /// Symbol with the given value on each listed orbit and 0 on unlisted orbits.
  static BoundarySymbol from_table(std::int64_t level, ResidueRing ring,
                                   const std::vector<std::pair<CuspPoint, std::int64_t>>& rows,
                                   std::string label = "table") {
    std::vector<CuspPoint> reps;
    std::vector<std::int64_t> values;
    for (const auto& [x, v] : rows) {
      reps.push_back(x);
      values.push_back(detail::mod(v, ring.modulus));
    }
    return BoundarySymbol(CuspClassifier(level, std::move(reps)), ring, std::move(values), Provenance::explicit_table,
                          std::move(label));
  }

  /// phi_{0, psi, chi}: value at r is the sum of psi^{-1}(x) chi(y) over units x mod Q, y mod R
  /// with r in the Gamma_1(QR)-orbit of x/(Qy), where Q, R are the moduli of psi, chi.
  static BoundarySymbol eisenstein(const DirichletCharacter& psi, const DirichletCharacter& chi) {
    if (!(psi.ring() == chi.ring())) throw DomainError("eisenstein boundary symbol: characters in different rings");
    if (psi.parity() * chi.parity() != 1) throw DomainError("eisenstein boundary symbol: psi*chi(-1) != 1");
    const std::int64_t q = psi.modulus();
    const std::int64_t r = chi.modulus();
    const std::int64_t level = q * r;
    const ResidueRing ring = psi.ring();
    CuspClassifier classes(level, cusp_representatives(level));
    std::vector<std::int64_t> values(classes.representatives().size(), 0);
    for (std::int64_t x = 0; x < q; ++x) {
      if (std::gcd(x, q) != 1) continue;
      for (std::int64_t y = 0; y < r; ++y) {
        if (std::gcd(y, r) != 1) continue;
        const std::int64_t yy = (r == 1) ? 1 : y;
        // x + tQ is coprime to Q*yy for some t; the orbit only depends on x mod Q.
        std::int64_t xx = (q == 1) ? 1 : x;
        while (std::gcd(xx, q * yy) != 1) xx += q;
        const auto idx = classes(CuspPoint::make(xx, q * yy));
        if (!idx) throw InternalError("eisenstein boundary symbol: unclassified cusp");
        const Residue contrib = psi.inverse_value(xx) * chi(yy);
        values[*idx] = detail::mod(values[*idx] + contrib.value(), ring.modulus);
      }
    }
    return BoundarySymbol(std::move(classes), ring, std::move(values), Provenance::eisenstein, "eisenstein");
  }

  Residue value(const CuspPoint& x) const {
    const auto idx = classes_(x);
    if (!idx) return {ring_, 0};
    return {ring_, values_[*idx]};
  }
  Residue operator()(const CuspPoint& x) const { return value(x); }

  /// phi(r) - phi(s).
  Residue difference(const CuspPoint& r, const CuspPoint& s) const { return value(r) - value(s); }

  /// Sum of n_i phi(r_i) over the terms of a divisor.
  Residue evaluate(const Divisor& d) const {
    Residue acc(ring_, 0);
    for (const auto& [x, n] : d.terms()) acc += Residue(ring_, n) * value(x);
    return acc;
  }

  std::int64_t level() const { return classes_.level(); }
  const ResidueRing& ring() const { return ring_; }
  Provenance provenance() const { return provenance_; }
  const std::string& label() const { return label_; }
  const std::vector<CuspPoint>& representatives() const { return classes_.representatives(); }
  const std::vector<std::int64_t>& values() const { return values_; }

  /// Value on the orbit of a given representative; the representative must be one of ours.
  Residue value_on_class(std::size_t i) const { return {ring_, values_.at(i)}; }

 private:
  BoundarySymbol(CuspClassifier classes, ResidueRing ring, std::vector<std::int64_t> values, Provenance prov,
                 std::string label)
      : classes_(std::move(classes)), ring_(ring), values_(std::move(values)), provenance_(prov),
        label_(std::move(label)) {}

  CuspClassifier classes_;
  ResidueRing ring_;
  std::vector<std::int64_t> values_;
  Provenance provenance_;
  std::string label_;
};

/// phi(r) - phi(s) for any boundary symbol.
inline Residue boundary_difference(const BoundarySymbol& phi, const CuspPoint& r, const CuspPoint& s) {
  return phi.difference(r, s);
}

/// phi_{0, omega_p^a, 1} with values mod p^m.
inline BoundarySymbol teichmuller_boundary_symbol(std::int64_t p, int a, int m = 1) {
  const auto ring = ResidueRing::prime_power(p, m);
  return BoundarySymbol::eisenstein(DirichletCharacter::teichmuller_power(p, a, ring), DirichletCharacter::trivial(ring));
}

/// phi_5 = phi_{0, omega_5^2, 1} and phi_7 = phi_{0, omega_7^4, 1}.
inline BoundarySymbol eisenstein_phi_p(std::int64_t p) {
  if (p == 5) return teichmuller_boundary_symbol(5, 2);
  if (p == 7) return teichmuller_boundary_symbol(7, 4);
  throw DomainError("eisenstein_phi_p: only p = 5, 7");
}

/// sum over a in (Z/p)^x of phi(inf) - phi(a/p).
inline Residue boundary_hypothesis_sum(const BoundarySymbol& phi, std::int64_t p) {
  Residue acc(phi.ring(), 0);
  for (std::int64_t a = 1; a < p; ++a) acc += phi.difference(CuspPoint::infinity(), CuspPoint::make(a, p));
  return acc;
}

}  // namespace taumt
