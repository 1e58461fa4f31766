#pragma once

// Loaders for the data files under fixtures/: orbit tables, divisor/residue lists, Serre triples.
// Lines are whitespace separated; '#' starts a comment.

#include "taumt/boundary.hpp"
#include "taumt/qseries.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef TAUMT_FIXTURE_DIR
#define TAUMT_FIXTURE_DIR "fixtures"
#endif

namespace taumt::fixtures {

/// $TAUMT_FIXTURES if set, else the directory baked in at build time.
inline std::filesystem::path default_dir() {
  if (const char* env = std::getenv("TAUMT_FIXTURES"); env && *env) return env;
  return TAUMT_FIXTURE_DIR;
}

namespace detail {

inline std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DomainError("fixture not readable: " + file.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(f);
    if (!fields.empty()) rows.push_back(std::move(fields));
  }
  return rows;
}

inline std::int64_t to_int(const std::string& s, const std::filesystem::path& file) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DomainError("fixture " + file.string() + ": bad integer '" + s + "'");
}

inline void expect_width(const std::vector<std::string>& row, std::size_t n, const std::filesystem::path& file) {
  if (row.size() != n)
    throw DomainError("fixture " + file.string() + ": expected " + std::to_string(n) + " fields, got " +
                      std::to_string(row.size()));
}

}  // namespace detail

using OrbitTable = std::vector<std::pair<CuspPoint, std::int64_t>>;

/// Rows "representative value".
inline OrbitTable load_orbit_table(const std::filesystem::path& file) {
  OrbitTable out;
  for (const auto& row : detail::read_rows(file)) {
    detail::expect_width(row, 2, file);
    out.emplace_back(CuspPoint::parse(row[0]), detail::to_int(row[1], file));
  }
  return out;
}

struct DivisorRow {
  CuspPoint r, s;
  std::vector<std::int64_t> values;
};

/// Rows "r s v1 [v2 ...]" describing {r} - {s} and its tabulated residues.
inline std::vector<DivisorRow> load_divisor_rows(const std::filesystem::path& file, std::size_t value_columns) {
  std::vector<DivisorRow> out;
  for (const auto& row : detail::read_rows(file)) {
    detail::expect_width(row, 2 + value_columns, file);
    DivisorRow d{CuspPoint::parse(row[0]), CuspPoint::parse(row[1]), {}};
    for (std::size_t i = 0; i < value_columns; ++i) d.values.push_back(detail::to_int(row[2 + i], file));
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<SerreCongruence> load_serre(const std::filesystem::path& file) {
  std::vector<SerreCongruence> out;
  for (const auto& row : detail::read_rows(file)) {
    detail::expect_width(row, 3, file);
    out.push_back({detail::to_int(row[0], file), static_cast<int>(detail::to_int(row[1], file)),
                   static_cast<int>(detail::to_int(row[2], file))});
  }
  return out;
}

inline OrbitTable phi5_table(const std::filesystem::path& dir = default_dir()) { return load_orbit_table(dir / "phi5.txt"); }
inline OrbitTable phi7_table(const std::filesystem::path& dir = default_dir()) { return load_orbit_table(dir / "phi7.txt"); }
inline OrbitTable phi9_table(const std::filesystem::path& dir = default_dir()) { return load_orbit_table(dir / "phi9.txt"); }

/// S_5 and S_7 with their alpha_p residues.
inline std::vector<DivisorRow> generating_set(std::int64_t p, const std::filesystem::path& dir = default_dir()) {
  if (p != 5 && p != 7) throw DomainError("generating_set: only p = 5, 7");
  return load_divisor_rows(dir / ("s" + std::to_string(p) + ".txt"), 1);
}

/// The 55 rows r, s, alpha_9 value, phi_9 difference.
inline std::vector<DivisorRow> appendix_table(const std::filesystem::path& dir = default_dir()) {
  return load_divisor_rows(dir / "appendix_table1.txt", 2);
}

inline std::vector<SerreCongruence> serre_triples(const std::filesystem::path& dir = default_dir()) {
  return load_serre(dir / "serre.txt");
}

/// The mod-9 symbol of level Gamma_1(27) given by its 30-orbit table.
inline BoundarySymbol phi9_symbol(const std::filesystem::path& dir = default_dir()) {
  const auto rows = phi9_table(dir);
  if (rows.size() != static_cast<std::size_t>(gamma1_cusp_count(27)))
    throw DomainError("phi9 table must list every Gamma_1(27) cusp");
  return BoundarySymbol::from_table(27, ResidueRing::prime_power(3, 2), rows, "phi9");
}

}  // namespace taumt::fixtures
