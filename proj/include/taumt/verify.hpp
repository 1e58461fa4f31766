#pragma once

// Verification drivers: each recomputes one family of claims and returns a plain report.

#include "taumt/fixtures.hpp"
#include "taumt/iwasawa.hpp"
#include "taumt/mansym.hpp"
#include "taumt/qseries.hpp"
#include "taumt/random.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taumt {

namespace fixtures {

/// Rows "name p value" of constants.txt.
inline std::map<std::pair<std::string, std::int64_t>, std::int64_t> constants(
    const std::filesystem::path& dir = default_dir()) {
  std::map<std::pair<std::string, std::int64_t>, std::int64_t> out;
  const auto file = dir / "constants.txt";
  for (const auto& row : detail::read_rows(file)) {
    detail::expect_width(row, 3, file);
    out[{row[0], detail::to_int(row[1], file)}] = detail::to_int(row[2], file);
  }
  return out;
}

inline std::int64_t constant(const std::string& name, std::int64_t p, const std::filesystem::path& dir = default_dir()) {
  const auto all = constants(dir);
  const auto it = all.find({name, p});
  if (it == all.end()) throw DomainError("constants.txt: no entry " + name + " " + std::to_string(p));
  return it->second;
}

}  // namespace fixtures

// ---------------------------------------------------------------- tau congruences

struct TauSweepReport {
  std::vector<TauCongruenceReport> cases;
  bool pass() const {
    for (const auto& c : cases)
      if (!c.congruent) return false;
    return !cases.empty();
  }
};

/// E_2 with (a, b) = (2, 0) at p = 3, 5 and (4, 0) at p = 7, up to `bound`.
inline TauSweepReport verify_weight_two(const QExpansion<BigInt>& tau, const std::vector<std::int64_t>& primes,
                                        std::int64_t bound) {
  TauSweepReport rep;
  for (auto p : primes) {
    const int a = (p == 7) ? 4 : 2;
    if (p != 3 && p != 5 && p != 7) throw DomainError("verify_weight_two: p must be 3, 5 or 7");
    rep.cases.push_back(verify_tau_congruence(tau, p, 2, a, 0, bound));
  }
  return rep;
}

/// Every admissible (k, a, b) with 1 <= k <= k_max, up to `bound`.
inline TauSweepReport verify_admissible_sweep(const QExpansion<BigInt>& tau, const std::vector<std::int64_t>& primes,
                                              int k_max, std::int64_t bound) {
  TauSweepReport rep;
  for (auto p : primes)
    for (const auto& [k, a, b] : admissible_classes(p, k_max)) rep.cases.push_back(verify_tau_congruence(tau, p, k, a, b, bound));
  return rep;
}

// ---------------------------------------------------------------- boundary tables

struct BoundaryTableReport {
  std::int64_t p = 0;
  struct Row {
    CuspPoint representative;
    std::int64_t expected = 0;
    std::int64_t computed = 0;
  };
  std::vector<Row> rows;
  bool covers_all_orbits = false;
  std::int64_t hypothesis_expected = 0;
  std::int64_t hypothesis_computed = 0;
  bool pass() const {
    if (!covers_all_orbits || hypothesis_expected != hypothesis_computed) return false;
    for (const auto& r : rows)
      if (r.expected != r.computed) return false;
    return !rows.empty();
  }
};

/// Eisenstein constructor against the tabulated orbit values for p = 5, 7.
inline BoundaryTableReport verify_boundary_table(std::int64_t p, const std::filesystem::path& dir = fixtures::default_dir()) {
  const auto table = fixtures::load_orbit_table(dir / ("phi" + std::to_string(p) + ".txt"));
  const auto phi = eisenstein_phi_p(p);
  BoundaryTableReport rep;
  rep.p = p;
  std::vector<CuspPoint> listed;
  for (const auto& [x, v] : table) {
    rep.rows.push_back({x, detail::mod(v, p), phi(x).value()});
    listed.push_back(x);
  }
  // Listed representatives must be inequivalent and exhaust the orbits.
  try {
    CuspClassifier cls(p, listed);
    rep.covers_all_orbits = listed.size() == cusp_representatives(p).size();
  } catch (const DomainError&) {
    rep.covers_all_orbits = false;
  }
  rep.hypothesis_expected = detail::mod(fixtures::constant("hypothesis_sum", p, dir), p);
  rep.hypothesis_computed = boundary_hypothesis_sum(phi, p).value();
  return rep;
}

// ---------------------------------------------------------------- modular-symbol congruences

struct SymbolCongruenceReport {
  std::int64_t p = 0;
  std::int64_t modulus = 0;
  struct Row {
    CuspPoint r, s;
    std::int64_t expected = 0;  // tabulated alpha value
    std::int64_t computed = 0;  // our alpha value
  };
  std::vector<Row> rows;
  std::optional<std::int64_t> unit;   // computed = unit * expected on every row
  std::optional<std::int64_t> constant;  // unit * tabulated c
  std::int64_t samples = 0;
  std::optional<std::pair<CuspPoint, CuspPoint>> first_failure;
  bool pass() const { return unit && constant && !first_failure && !rows.empty(); }
};

/// The boundary symbol congruent to alpha_p(Delta): phi_5, phi_7, or phi_9 for p = 3.
inline BoundarySymbol congruent_boundary_symbol(std::int64_t p, const std::filesystem::path& dir) {
  if (p == 3) return fixtures::phi9_symbol(dir);
  return eisenstein_phi_p(p);
}

/// Tabulated generating-set residues up to one unit, then `samples` random pairs
/// alpha({r} - {s}) = c (phi(r) - phi(s)) with c the unit times the tabulated constant.
inline SymbolCongruenceReport verify_symbol_congruence(std::int64_t p, std::int64_t samples, std::uint64_t seed,
                                                       const std::filesystem::path& dir = fixtures::default_dir()) {
  if (p != 3 && p != 5 && p != 7) throw DomainError("verify_symbol_congruence: p must be 3, 5 or 7");
  SymbolCongruenceReport rep;
  rep.p = p;
  rep.modulus = (p == 3) ? 9 : p;
  const AlphaSymbol alpha(delta_symbol(), rep.modulus);
  const auto ring = alpha.ring();
  const auto table = (p == 3) ? fixtures::appendix_table(dir) : fixtures::generating_set(p, dir);
  std::vector<Residue> computed, expected;
  for (const auto& row : table) {
    const auto v = alpha.difference(row.r, row.s);
    rep.rows.push_back({row.r, row.s, detail::mod(row.values[0], rep.modulus), v.value()});
    computed.push_back(v);
    expected.emplace_back(ring, row.values[0]);
  }
  const auto u = unit_relating(computed, expected);
  if (!u) return rep;
  rep.unit = u->value();
  const Residue c = *u * Residue(ring, fixtures::constant("c", p, dir));
  rep.constant = c.value();
  const auto phi = congruent_boundary_symbol(p, dir);
  gen::Rng rng(seed);
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto r = gen::cusp(rng), s = gen::cusp(rng);
    ++rep.samples;
    if (alpha.difference(r, s) != c * phi.difference(r, s)) {
      rep.first_failure = {r, s};
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- appendix table

struct AppendixReport {
  struct Row {
    CuspPoint r, s;
    std::int64_t alpha_expected = 0, alpha_computed = 0;
    std::int64_t phi_expected = 0, phi_computed = 0;
  };
  std::vector<Row> rows;
  std::optional<std::int64_t> unit;  // alpha_computed = unit * alpha_expected
  std::size_t phi_matches = 0;
  std::size_t alpha_matches = 0;  // after applying the unit
  bool pass() const { return unit && phi_matches == rows.size() && alpha_matches == rows.size() && !rows.empty(); }
};

/// Both columns of the mod-9 table: alpha_9(Delta) up to one unit, phi_9 differences exactly.
inline AppendixReport verify_appendix(const std::filesystem::path& dir = fixtures::default_dir()) {
  AppendixReport rep;
  const AlphaSymbol alpha(delta_symbol(), 9);
  const auto phi9 = fixtures::phi9_symbol(dir);
  const auto ring = alpha.ring();
  std::vector<Residue> computed, expected;
  for (const auto& row : fixtures::appendix_table(dir)) {
    AppendixReport::Row out{row.r, row.s, detail::mod(row.values[0], 9), 0, detail::mod(row.values[1], 9), 0};
    out.alpha_computed = alpha.difference(row.r, row.s).value();
    out.phi_computed = phi9.difference(row.r, row.s).value();
    if (out.phi_computed == out.phi_expected) ++rep.phi_matches;
    computed.emplace_back(ring, out.alpha_computed);
    expected.emplace_back(ring, out.alpha_expected);
    rep.rows.push_back(out);
  }
  // Pick the unit agreeing with the most rows so a partial mismatch is still reported per row.
  std::size_t best = 0;
  for (std::int64_t u = 1; u < 9; ++u) {
    if (u % 3 == 0) continue;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < computed.size(); ++i) hits += (computed[i] == Residue(ring, u) * expected[i]);
    if (hits > best) {
      best = hits;
      rep.unit = u;
    }
  }
  rep.alpha_matches = best;
  return rep;
}

}  // namespace taumt
