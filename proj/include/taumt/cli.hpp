#pragma once

// Command-line front end. Exit codes: 0 verified, 1 falsified, 2 usage.

#include "taumt/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace taumt::cli {

inline constexpr int exit_verified = 0;
inline constexpr int exit_falsified = 1;
inline constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string claim;
  std::optional<std::int64_t> p;
  int n = 1;
  std::optional<int> m;
  std::optional<std::int64_t> bound;
  std::optional<std::int64_t> modulus;
  int n_max = 2;
  int k_max = 0;
  std::int64_t samples = 1000;
  std::uint64_t seed = 20240101;
  std::string format = "text";
  std::string out;
  std::string fixtures;
  std::string source;
  std::optional<int> a, b;
  std::optional<std::int64_t> generator;

  std::filesystem::path fixture_dir() const { return fixtures.empty() ? fixtures::default_dir() : std::filesystem::path(fixtures); }
};

namespace detail {

inline Json ext(const ExtNat& v) { return v.is_infinite() ? Json("inf") : Json(v.value()); }

inline Json values(const std::vector<Residue>& v) {
  Json arr = Json::array();
  for (const auto& c : v) arr.push_back(c.value());
  return arr;
}

inline std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

inline std::string divisor_text(const CuspPoint& r, const CuspPoint& s) {
  return "{" + r.to_string() + "} - {" + s.to_string() + "}";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

/// Flat records to CSV with the union of keys as header, in first-seen order.
inline std::string to_csv(const Json& records) {
  std::vector<std::string> keys;
  for (const auto& r : records)
    for (const auto& [k, v] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::ostringstream os;
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << "\n";
  for (const auto& r : records) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) os << ",";
      if (!r.contains(keys[i]) || r[keys[i]].is_null()) continue;
      const auto& v = r[keys[i]];
      if (v.is_string()) os << csv_field(v.get<std::string>());
      else if (v.is_array()) {
        std::string joined;
        for (std::size_t j = 0; j < v.size(); ++j) joined += (j ? " " : "") + v[j].dump();
        os << csv_field(joined);
      } else os << v.dump();
    }
    os << "\n";
  }
  return os.str();
}

/// The fixed schema shared by `mt` and the lambda claims.
inline Json mt_record(const std::string& claim, const GroupRingElt& f, const TPoly& t, const IwasawaInvariants& inv,
                      std::optional<std::int64_t> unit) {
  Json j;
  j["claim"] = claim;
  j["p"] = f.p;
  j["n"] = f.n;
  j["m"] = f.ring.exponent;
  j["coeffs_group_basis"] = values(f.coeffs);
  j["coeffs_T_basis"] = values(t.coeffs);
  j["mu"] = ext(inv.mu);
  j["lambda"] = ext(inv.lambda);
  j["precision_ok"] = inv.precision_ok;
  j["unit"] = unit ? Json(*unit) : Json(nullptr);
  return j;
}

struct Outcome {
  bool pass = true;
  Json records = Json::array();
  std::vector<std::string> text;  // human-readable lines
};

inline std::vector<std::int64_t> primes_or(const RunConfig& cfg, std::vector<std::int64_t> dflt,
                                           const std::vector<std::int64_t>& allowed) {
  if (!cfg.p) return dflt;
  if (std::find(allowed.begin(), allowed.end(), *cfg.p) == allowed.end())
    throw UsageError("claim " + cfg.claim + " does not support p = " + std::to_string(*cfg.p));
  return {*cfg.p};
}

inline Outcome verify_A(const RunConfig& cfg) {
  const auto primes = primes_or(cfg, {3, 5, 7}, {3, 5, 7});
  const std::int64_t bound = cfg.bound.value_or(10000);
  if (bound < 1) throw UsageError("--bound must be >= 1");
  const auto tau = tau_expansion(bound);
  Outcome out;
  auto add = [&](const TauSweepReport& rep, const std::string& label) {
    for (const auto& c : rep.cases) {
      Json j;
      j["claim"] = "A";
      j["family"] = label;
      j["p"] = c.p;
      j["k"] = c.k;
      j["a"] = c.a;
      j["b"] = c.b;
      j["bound"] = c.bound;
      j["admissible"] = c.admissible;
      j["first_counterexample"] = c.first_counterexample ? Json(*c.first_counterexample) : Json(nullptr);
      j["verdict"] = verdict(c.congruent);
      out.records.push_back(j);
      std::ostringstream line;
      line << (c.congruent ? "PASS" : "FAIL") << " A p=" << c.p << " k=" << c.k << " a=" << c.a << " b=" << c.b
           << " n<=" << c.bound;
      if (c.first_counterexample)
        line << " counterexample n=" << *c.first_counterexample << " (tau=" << c.tau_residue
             << ", E=" << c.eisenstein_residue << ")";
      out.text.push_back(line.str());
    }
    out.pass = out.pass && rep.pass();
  };
  add(verify_weight_two(tau, primes, bound), "weight2");
  if (cfg.k_max > 0) add(verify_admissible_sweep(tau, primes, cfg.k_max, bound), "sweep");
  return out;
}

inline Outcome verify_serre(const RunConfig& cfg) {
  const std::int64_t bound = cfg.bound.value_or(10000);
  if (bound < 2) throw UsageError("--bound must be >= 2");
  const auto triples = fixtures::serre_triples(cfg.fixture_dir());
  const auto tau = tau_expansion(bound);
  Outcome out;
  for (const auto& r : verify_serre_congruences(tau, triples, bound)) {
    const bool ok = !r.first_failure;
    Json j;
    j["claim"] = "serre";
    j["modulus"] = r.congruence.modulus;
    j["e1"] = r.congruence.e1;
    j["e2"] = r.congruence.e2;
    j["primes_checked"] = r.primes_checked;
    j["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
    j["verdict"] = verdict(ok);
    out.records.push_back(j);
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " serre tau(l) = l^" << r.congruence.e1 << " + l^" << r.congruence.e2
         << " mod " << r.congruence.modulus << " for " << r.primes_checked << " primes l <= " << bound;
    if (r.first_failure) line << " (fails at l=" << *r.first_failure << ")";
    out.text.push_back(line.str());
    out.pass = out.pass && ok;
  }
  return out;
}

inline Outcome verify_congmodsymb(const RunConfig& cfg) {
  const auto primes = primes_or(cfg, {5, 7}, {3, 5, 7});
  Outcome out;
  for (auto p : primes) {
    const auto rep = verify_symbol_congruence(p, cfg.samples, cfg.seed, cfg.fixture_dir());
    for (const auto& row : rep.rows) {
      Json j;
      j["claim"] = "congmodsymb";
      j["p"] = p;
      j["divisor"] = divisor_text(row.r, row.s);
      j["expected"] = row.expected;
      j["computed"] = row.computed;
      out.records.push_back(j);
    }
    Json j;
    j["claim"] = "congmodsymb";
    j["p"] = p;
    j["modulus"] = rep.modulus;
    j["unit"] = rep.unit ? Json(*rep.unit) : Json(nullptr);
    j["constant"] = rep.constant ? Json(*rep.constant) : Json(nullptr);
    j["samples"] = rep.samples;
    j["first_failure"] = rep.first_failure ? Json(divisor_text(rep.first_failure->first, rep.first_failure->second))
                                           : Json(nullptr);
    j["verdict"] = verdict(rep.pass());
    out.records.push_back(j);
    std::ostringstream line;
    line << (rep.pass() ? "PASS" : "FAIL") << " congmodsymb mod " << rep.modulus << ": " << rep.rows.size()
         << " tabulated residues";
    if (rep.unit) line << " match up to unit " << *rep.unit << "; c = " << *rep.constant << " on " << rep.samples
                       << " random pairs";
    else line << " do not match up to any unit";
    if (rep.first_failure) line << "; fails on " << divisor_text(rep.first_failure->first, rep.first_failure->second);
    out.text.push_back(line.str());
    out.pass = out.pass && rep.pass();
  }
  return out;
}

inline Outcome verify_appendix_claim(const RunConfig& cfg) {
  const auto rep = verify_appendix(cfg.fixture_dir());
  Outcome out;
  const std::int64_t u = rep.unit.value_or(0);
  for (const auto& row : rep.rows) {
    Json j;
    j["divisor"] = divisor_text(row.r, row.s);
    j["alpha9"] = row.alpha_computed;
    j["phi9"] = row.phi_computed;
    const bool ok = row.phi_computed == row.phi_expected &&
                    taumt::detail::mod(u * row.alpha_expected, 9) == row.alpha_computed;
    if (cfg.format != "csv") {
      j["alpha9_expected"] = row.alpha_expected;
      j["phi9_expected"] = row.phi_expected;
      j["verdict"] = verdict(ok);
    }
    out.records.push_back(j);
    if (!ok) out.text.push_back("FAIL " + divisor_text(row.r, row.s) + " alpha9=" + std::to_string(row.alpha_computed) +
                                " phi9=" + std::to_string(row.phi_computed));
  }
  std::ostringstream line;
  line << (rep.pass() ? "PASS" : "FAIL") << " appendix: " << rep.alpha_matches << "/" << rep.rows.size()
       << " alpha9 rows (unit " << u << "), " << rep.phi_matches << "/" << rep.rows.size() << " phi9 rows";
  out.text.push_back(line.str());
  out.pass = rep.pass();
  return out;
}

inline Outcome verify_lambda(const RunConfig& cfg, LambdaClaim claim) {
  if (cfg.n_max < 1) throw UsageError("--nmax must be >= 1");
  LambdaOptions opt;
  opt.seed = cfg.seed;
  opt.samples = static_cast<int>(std::min<std::int64_t>(cfg.samples, 1000));
  switch (claim) {
    case LambdaClaim::hypothesis: opt.primes = primes_or(cfg, {5, 7, 11}, {5, 7, 11, 13}); break;
    case LambdaClaim::B:
    case LambdaClaim::C: opt.primes = primes_or(cfg, {5, 7}, {5, 7}); break;
    case LambdaClaim::D:
      primes_or(cfg, {3}, {3});
      opt.phi9 = fixtures::phi9_symbol(cfg.fixture_dir());
      break;
  }
  const auto rep = verify_lambda_theorems(claim, cfg.n_max, opt);
  Outcome out;
  for (const auto& row : rep.rows) {
    auto j = mt_record(to_string(claim), row.element, row.t_basis, row.computed,
                       row.unit ? std::optional<std::int64_t>(row.unit->value()) : std::nullopt);
    j["route"] = row.route;
    j["expected_mu"] = ext(row.expected_mu);
    j["expected_lambda"] = ext(row.expected_lambda);
    j["verdict"] = verdict(row.pass);
    out.records.push_back(j);
    std::ostringstream line;
    line << (row.pass ? "PASS" : "FAIL") << " " << to_string(claim) << " " << row.route << " p=" << row.p
         << " n=" << row.n << " m=" << row.m << " mu=" << row.computed.mu.to_string()
         << " lambda=" << row.computed.lambda.to_string() << " (expected " << row.expected_mu.to_string() << ", "
         << row.expected_lambda.to_string() << ")";
    if (row.unit) line << " unit=" << row.unit->value();
    if (!row.note.empty()) line << " " << row.note;
    out.text.push_back(line.str());
  }
  out.pass = rep.pass();
  return out;
}

inline Outcome run_verify(const RunConfig& cfg) {
  if (cfg.claim == "A") return verify_A(cfg);
  if (cfg.claim == "serre") return verify_serre(cfg);
  if (cfg.claim == "congmodsymb") return verify_congmodsymb(cfg);
  if (cfg.claim == "appendix") return verify_appendix_claim(cfg);
  if (cfg.claim == "B") return verify_lambda(cfg, LambdaClaim::B);
  if (cfg.claim == "C") return verify_lambda(cfg, LambdaClaim::C);
  if (cfg.claim == "D") return verify_lambda(cfg, LambdaClaim::D);
  if (cfg.claim == "hypothesis") return verify_lambda(cfg, LambdaClaim::hypothesis);
  throw UsageError("unknown claim " + cfg.claim);
}

inline Outcome run_tau(const RunConfig& cfg) {
  const auto tau = tau_expansion(cfg.n);
  Outcome out;
  Json coeffs = Json::array();
  for (std::int64_t i = 1; i <= cfg.n; ++i) {
    const BigInt& v = tau.coeffs[i];
    std::string s = cfg.modulus ? std::to_string(taumt::detail::bigint_mod(v, *cfg.modulus)) : v.str();
    out.text.push_back(s);
    Json j;
    j["n"] = i;
    j["tau"] = cfg.modulus ? Json(taumt::detail::bigint_mod(v, *cfg.modulus)) : Json(s);
    out.records.push_back(j);
  }
  return out;
}

inline Outcome run_mt(const RunConfig& cfg) {
  if (!cfg.p) throw UsageError("--p is required");
  const std::int64_t p = *cfg.p;
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  GroupRingElt f;
  if (cfg.source == "delta") {
    if (p != 3 && p != 5 && p != 7) throw UsageError("--source delta supports p = 3, 5, 7");
    const int m = cfg.m.value_or(p == 3 ? 2 : 1);
    f = mazur_tate(AlphaSymbol(delta_symbol(), taumt::detail::ipow(p, m)), p, cfg.n, cfg.generator);
  } else if (cfg.source == "phi9") {
    if (p != 3) throw UsageError("--source phi9 requires p = 3");
    if (cfg.m && *cfg.m != 2) throw UsageError("--source phi9 has values mod 9 (m = 2)");
    f = mazur_tate(fixtures::phi9_symbol(cfg.fixture_dir()), 3, cfg.n, cfg.generator);
  } else if (cfg.source == "eis") {
    if (p < 3 || !taumt::detail::is_prime(p)) throw UsageError("--source eis needs an odd prime p");
    const int m = cfg.m.value_or(1);
    int a = 0;
    if (cfg.a) a = *cfg.a;
    else if (p == 5) a = 2;
    else if (p == 7) a = 4;
    else throw UsageError("--source eis: give --a for p = " + std::to_string(p));
    const auto [psi, chi] = teichmuller_pair(p, a, cfg.b.value_or(0), m);
    if (psi.parity() * chi.parity() != 1) throw UsageError("--source eis: psi chi(-1) must be 1");
    f = mazur_tate(BoundarySymbol::eisenstein(psi, chi), p, cfg.n, cfg.generator);
  } else {
    throw UsageError("unknown source " + cfg.source);
  }
  const auto t = to_T_basis(f);
  const auto inv = invariants(t);
  Outcome out;
  out.records.push_back(mt_record("mt:" + cfg.source, f, t, inv, std::nullopt));
  std::ostringstream line;
  line << "mt " << cfg.source << " p=" << f.p << " n=" << f.n << " m=" << f.ring.exponent << " generator=" << f.generator
       << "\ngroup basis: ";
  for (const auto& c : f.coeffs) line << c.value() << " ";
  line << "\nT basis: ";
  for (const auto& c : t.coeffs) line << c.value() << " ";
  line << "\nmu=" << inv.mu.to_string() << " lambda=" << inv.lambda.to_string()
       << " precision_ok=" << (inv.precision_ok ? "true" : "false");
  out.text.push_back(line.str());
  return out;
}

inline void emit(const RunConfig& cfg, const Outcome& res, std::ostream& os) {
  if (cfg.format == "json") {
    if (cfg.command == "mt") {
      os << res.records.at(0).dump(2) << "\n";
      return;
    }
    Json doc;
    doc["command"] = cfg.command;
    if (!cfg.claim.empty()) doc["claim"] = cfg.claim;
    if (cfg.command == "verify") doc["verdict"] = verdict(res.pass);
    doc["records"] = res.records;
    os << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    os << to_csv(res.records);
  } else {
    for (const auto& l : res.text) os << l << "\n";
  }
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing reports to `out` (or --out) and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Ramanujan tau congruences, modular symbols and Mazur-Tate elements", "taumt"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto formats = CLI::IsMember({"text", "json", "csv"});

  auto* tau = app.add_subcommand("tau", "print tau(1..N), optionally reduced");
  tau->add_option("--n", cfg.n, "bound N")->required()->check(CLI::PositiveNumber);
  tau->add_option("--mod", cfg.modulus, "reduce modulo this integer")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  tau->add_option("--format", cfg.format)->check(formats);
  tau->add_option("--out", cfg.out, "write to file");

  auto* verify = app.add_subcommand("verify", "re-check one family of claims");
  verify->add_option("claim", cfg.claim, "A | B | C | D | hypothesis | serre | congmodsymb | appendix")
      ->required()
      ->check(CLI::IsMember({"A", "B", "C", "D", "hypothesis", "serre", "congmodsymb", "appendix"}));
  verify->add_option("--p", cfg.p, "restrict to one prime");
  verify->add_option("--bound", cfg.bound, "coefficient / prime bound");
  verify->add_option("--nmax", cfg.n_max, "largest level n")->check(CLI::PositiveNumber);
  verify->add_option("--kmax", cfg.k_max, "A: also sweep admissible (k, a, b) with k <= kmax")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--samples", cfg.samples, "random cases")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--format", cfg.format)->check(formats);
  verify->add_option("--out", cfg.out, "write to file");
  verify->add_option("--fixtures", cfg.fixtures, "fixture directory")->check(CLI::ExistingDirectory);

  auto* mt = app.add_subcommand("mt", "Mazur-Tate element and its invariants");
  mt->add_option("--source", cfg.source)->required()->check(CLI::IsMember({"delta", "eis", "phi9"}));
  mt->add_option("--p", cfg.p)->required();
  mt->add_option("--n", cfg.n)->check(CLI::PositiveNumber);
  mt->add_option("--m", cfg.m, "precision: coefficients mod p^m")->check(CLI::Range(1, 6));
  mt->add_option("--a", cfg.a, "eis: psi = omega_p^a");
  mt->add_option("--b", cfg.b, "eis: chi = omega_p^b");
  mt->add_option("--generator", cfg.generator, "primitive root used for gamma_n");
  mt->add_option("--format", cfg.format)->check(formats);
  mt->add_option("--out", cfg.out, "write to file");
  mt->add_option("--fixtures", cfg.fixtures, "fixture directory")->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_verified : exit_usage;
  }

  if (tau->parsed()) cfg.command = "tau";
  else if (verify->parsed()) cfg.command = "verify";
  else cfg.command = "mt";

  detail::Outcome res;
  try {
    if (cfg.command == "tau") res = detail::run_tau(cfg);
    else if (cfg.command == "verify") res = detail::run_verify(cfg);
    else res = detail::run_mt(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_falsified;
  }

  if (cfg.out.empty()) {
    detail::emit(cfg, res, out);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "cannot write " << cfg.out << "\n";
      return exit_usage;
    }
    detail::emit(cfg, res, file);
  }
  if (cfg.command == "verify" && !res.pass) {
    err << "claim " << cfg.claim << " falsified\n";
    return exit_falsified;
  }
  return exit_verified;
}

}  // namespace taumt::cli
