// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "taumt/fixtures.hpp"
#include "taumt/iwasawa.hpp"
#include "taumt/random.hpp"
#include "taumt/verify.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace taumt;

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Verdict()> check;
};

constexpr std::uint64_t kSeed = 20240101;
constexpr int kCases = 1000;

const QExpansion<BigInt>& tau10k() {
  static const auto t = tau_expansion(10000);
  return t;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Verdict theorem_a() {
  const auto two = verify_weight_two(tau10k(), {3, 5, 7}, 10000);
  const auto sweep = verify_admissible_sweep(tau10k(), {3, 5, 7}, 20, 1000);
  std::ostringstream os;
  os << "weight-2 cases " << two.cases.size() << " to n=10000, admissible (p,k,a,b) " << sweep.cases.size()
     << " to n=1000";
  for (const auto& c : two.cases)
    if (!c.congruent) os << "; fails p=" << c.p << " at n=" << *c.first_counterexample;
  for (const auto& c : sweep.cases)
    if (!c.congruent) os << "; fails p=" << c.p << " k=" << c.k << " a=" << c.a << " b=" << c.b;
  return {two.pass() && sweep.pass(), os.str()};
}

Verdict serre() {
  const auto triples = fixtures::serre_triples();
  const auto reps = verify_serre_congruences(tau10k(), triples, 10000);
  bool ok = reps.size() == 3;
  std::ostringstream os;
  for (const auto& r : reps) {
    ok = ok && !r.first_failure;
    os << "mod " << r.congruence.modulus << ": " << r.primes_checked << " primes"
       << (r.first_failure ? " FAIL at " + std::to_string(*r.first_failure) : "") << "; ";
  }
  return {ok, os.str()};
}

Verdict boundary_tables() {
  bool ok = true;
  std::ostringstream os;
  for (std::int64_t p : {5, 7}) {
    const auto rep = verify_boundary_table(p);
    ok = ok && rep.pass();
    std::vector<std::int64_t> vals;
    for (const auto& r : rep.rows) vals.push_back(r.computed);
    os << "phi" << p << " values " << join(vals) << " sum " << rep.hypothesis_computed << "; ";
  }
  return {ok, os.str()};
}

Verdict symbol_congruence() {
  bool ok = true;
  std::ostringstream os;
  std::size_t rows = 0;
  for (std::int64_t p : {5, 7}) {
    const auto rep = verify_symbol_congruence(p, kCases, kSeed);
    ok = ok && rep.pass() && rep.samples == kCases;
    rows += rep.rows.size();
    os << "p=" << p << " unit " << (rep.unit ? std::to_string(*rep.unit) : "none") << " c "
       << (rep.constant ? std::to_string(*rep.constant) : "none") << " pairs " << rep.samples << "; ";
  }
  ok = ok && rows == 8;
  os << "tabulated rows " << rows;
  return {ok, os.str()};
}

Verdict appendix() {
  const auto rep = verify_appendix();
  std::ostringstream os;
  os << "rows " << rep.rows.size() << ", alpha9 " << rep.alpha_matches << " (unit "
     << (rep.unit ? std::to_string(*rep.unit) : "none") << "), phi9 " << rep.phi_matches;
  return {rep.pass() && rep.rows.size() == 55, os.str()};
}

std::string lambdas(const LambdaReport& rep, const std::string& route = "") {
  std::ostringstream os;
  for (const auto& r : rep.rows) {
    if (!route.empty() && r.route != route) continue;
    os << "p=" << r.p << ",n=" << r.n << ":" << r.computed.lambda.to_string() << (r.pass ? "" : "(FAIL)") << " ";
  }
  return os.str();
}

Verdict theorem_b() {
  const auto b5 = verify_lambda_theorems(LambdaClaim::B, 4, {.primes = {5}});
  const auto b7 = verify_lambda_theorems(LambdaClaim::B, 3, {.primes = {7}});
  return {b5.pass() && b7.pass() && b5.rows.size() == 4 && b7.rows.size() == 3, lambdas(b5) + lambdas(b7)};
}

Verdict theorem_c() {
  const auto rep = verify_lambda_theorems(LambdaClaim::C, 2);
  std::ostringstream os;
  os << lambdas(rep) << "units";
  for (const auto& r : rep.rows) os << " " << (r.unit ? std::to_string(r.unit->value()) : "none");
  return {rep.pass() && rep.rows.size() == 4, os.str()};
}

Verdict theorem_d() {
  LambdaOptions opt;
  opt.phi9 = fixtures::phi9_symbol();
  opt.delta_n_max = 3;
  const auto rep = verify_lambda_theorems(LambdaClaim::D, 6, opt);
  bool ok = rep.pass();
  int delta_rows = 0, phi_rows = 0;
  for (const auto& r : rep.rows) {
    ok = ok && r.computed.mu == ExtNat(1);
    (r.route == "delta" ? delta_rows : phi_rows)++;
  }
  ok = ok && delta_rows == 3 && phi_rows == 6;
  return {ok, "mu=1; delta " + lambdas(rep, "delta") + "| phi9 " + lambdas(rep, "phi9")};
}

// ---- criterion 9: randomized property suites

struct PropertyTally {
  std::vector<std::pair<std::string, bool>> suites;
  void add(std::string name, bool ok) { suites.emplace_back(std::move(name), ok); }
};

bool manin_and_sl2(gen::Rng& rng) {
  const auto d = delta_symbol();
  if (!d.satisfies_relations()) return false;
  for (const auto& b : manin_space(12))
    if (!b.satisfies_relations()) return false;
  for (int i = 0; i < kCases; ++i) {
    const auto g = gen::sl2(rng);
    const auto D = gen::divisor(rng);
    if (eval_symbol(d, g * D).act(g) != eval_symbol(d, D)) return false;
  }
  return true;
}

bool alpha_invariance(gen::Rng& rng) {
  const auto d = delta_symbol();
  for (std::int64_t n : {5, 7, 9, 27}) {
    const auto a = alpha_N(d, n);
    for (int i = 0; i < kCases; ++i) {
      const auto g = gen::gamma1(rng, n);
      const auto D = gen::divisor(rng);
      if (a(g * D) != a(D)) return false;
    }
  }
  // The table-normalized map at 9 keeps Gamma_1(27)-invariance.
  const auto a9 = normalized_alpha(d, 9);
  for (int i = 0; i < kCases; ++i) {
    const auto g = gen::gamma1(rng, 27);
    const auto D = gen::divisor(rng);
    if (a9(g * D) != a9(D)) return false;
  }
  return true;
}

bool hecke_eigen() {
  const auto d = delta_symbol();
  for (std::int64_t l : {2, 3, 5}) {
    const BigInt t = tau_expansion(l).coeffs[static_cast<std::size_t>(l)];
    if (hecke_T(l, d).x != t * d.x) return false;
  }
  return true;
}

bool cusp_laws(gen::Rng& rng) {
  for (std::int64_t n : {5, 7, 9, 27})
    for (int i = 0; i < kCases; ++i) {
      const auto x = gen::cusp(rng, 300), y = gen::cusp(rng, 300);
      const auto g = gen::gamma1(rng, n);
      const auto gx = g * x;
      if (!cusp_equivalent(n, x, x)) return false;
      if (cusp_equivalent(n, x, y) != cusp_equivalent(n, y, x)) return false;
      if (!cusp_equivalent(n, x, gx)) return false;
      if (cusp_equivalent(n, gx, y) != cusp_equivalent(n, x, y)) return false;  // transitivity through gx
    }
  return true;
}

GroupRingElt random_element(gen::Rng& rng, std::int64_t p, int n, int m) {
  const auto ring = ResidueRing::prime_power(p, m);
  GroupRingElt f{p, n, ring, primitive_root(p, n), {}};
  for (std::int64_t i = 0; i < detail::ipow(p, n); ++i) f.coeffs.emplace_back(ring, gen::uniform(rng, 0, ring.modulus - 1));
  return f;
}

bool mu_lambda_invariance(gen::Rng& rng) {
  const std::int64_t shapes[][3] = {{3, 2, 2}, {5, 1, 2}, {7, 1, 1}, {5, 2, 1}};
  for (int i = 0; i < kCases; ++i) {
    const auto* s = shapes[i % 4];
    const auto f = random_element(rng, s[0], static_cast<int>(s[1]), static_cast<int>(s[2]));
    const auto base = invariants(f);
    std::int64_t u = 0;
    while (u % s[0] == 0) u = gen::uniform(rng, 1, f.ring.modulus - 1);
    if (invariants(f.scaled(Residue(f.ring, u))) != base) return false;
    // another generator: gamma -> gamma^k
    const auto order = static_cast<std::int64_t>(f.size());
    std::int64_t k = 0;
    while (k % s[0] == 0) k = gen::uniform(rng, 1, order - 1);
    auto g = f;
    for (std::int64_t j = 0; j < order; ++j) g.coeffs[static_cast<std::size_t>(j * k % order)] = f.coeffs[j];
    if (invariants(g) != base) return false;
  }
  return true;
}

bool round_trip(gen::Rng& rng) {
  for (int i = 0; i < kCases; ++i) {
    const auto f = random_element(rng, i % 2 ? 3 : 5, 2, 2);
    const auto back = from_T_basis(to_T_basis(f), f.p, f.n, f.generator);
    for (std::size_t j = 0; j < f.size(); ++j)
      if (back.coeffs[j] != f.coeffs[j]) return false;
  }
  return true;
}

Verdict properties() {
  gen::Rng rng(kSeed);
  PropertyTally t;
  t.add("manin+sl2", manin_and_sl2(rng));
  t.add("alpha_N", alpha_invariance(rng));
  t.add("hecke", hecke_eigen());
  t.add("cusps", cusp_laws(rng));
  t.add("mu/lambda", mu_lambda_invariance(rng));
  t.add("round-trip", round_trip(rng));
  bool ok = true;
  std::ostringstream os;
  os << kCases << " cases, seed " << kSeed << ":";
  for (const auto& [name, pass] : t.suites) {
    ok = ok && pass;
    os << " " << name << "=" << (pass ? "ok" : "FAIL");
  }
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "tau congruences", 30, theorem_a},
      {2, "Serre congruences", 30, serre},
      {3, "boundary tables", 1, boundary_tables},
      {4, "modular-symbol congruence", 60, symbol_congruence},
      {5, "mod-9 table", 60, appendix},
      {6, "lambda of boundary elements", 120, theorem_b},
      {7, "lambda via Delta, p = 5, 7", 120, theorem_c},
      {8, "mu and lambda at p = 3", 120, theorem_d},
      {9, "property suites", 600, properties},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool pass = v.ok && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << std::fixed
              << std::setprecision(2) << secs << "s, limit " << std::setprecision(0) << c.limit_seconds << "s"
              << (in_time ? "" : ", TIMEOUT") << ") " << v.detail << std::endl;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << (criteria.size() - failures) << "/" << criteria.size()
            << std::endl;
  return failures ? 1 : 0;
}
