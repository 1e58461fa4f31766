#pragma once

// Points of P^1(Q), divisors on them, and Gamma_1(N) cusp equivalence.

#include "taumt/core.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace taumt {

/// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  constexpr std::int64_t det() const { return a * d - b * c; }
  constexpr Mat2 adjugate() const { return {d, -b, -c, a}; }
  /// Inverse for determinant +-1.
  Mat2 inverse() const {
    const auto D = det();
    if (D != 1 && D != -1) throw DomainError("Mat2::inverse: determinant is not +-1");
    auto m = adjugate();
    return {m.a * D, m.b * D, m.c * D, m.d * D};
  }
  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
  }
};

namespace mats {
inline constexpr Mat2 S{0, -1, 1, 0};
inline constexpr Mat2 U{0, -1, 1, -1};
inline constexpr Mat2 T{1, 1, 0, 1};
inline constexpr Mat2 iota{-1, 0, 0, 1};
}  // namespace mats

/// Point a/c of P^1(Q) with gcd(a, c) = 1, c >= 0, and infinity stored as (1, 0).
class CuspPoint {
 public:
  CuspPoint() = default;  // infinity

  static CuspPoint make(std::int64_t a, std::int64_t c) {
    if (a == 0 && c == 0) throw DomainError("CuspPoint: 0/0");
    const std::int64_t g = std::gcd(a, c);
    a /= g;
    c /= g;
    if (c < 0) {
      a = -a;
      c = -c;
    }
    if (c == 0) a = 1;
    CuspPoint x;
    x.a_ = a;
    x.c_ = c;
    return x;
  }
  static CuspPoint infinity() { return {}; }
  static CuspPoint integer(std::int64_t n) { return make(n, 1); }

  /// Parses "a/c", an integer, or one of "inf", "oo", "Infinity".
  static CuspPoint parse(std::string_view s) {
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '{')) v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '}')) v.remove_suffix(1);
      return v;
    };
    s = trim(s);
    if (s == "inf" || s == "oo" || s == "Infinity" || s == "infinity") return infinity();
    auto to_int = [&](std::string_view v) {
      std::int64_t out = 0;
      if (!v.empty() && v.front() == '+') v.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
      if (ec != std::errc() || ptr != v.data() + v.size())
        throw DomainError("CuspPoint::parse: bad integer '" + std::string(v) + "'");
      return out;
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return make(to_int(s), 1);
    return make(to_int(s.substr(0, slash)), to_int(s.substr(slash + 1)));
  }

  std::int64_t num() const { return a_; }
  std::int64_t den() const { return c_; }
  bool is_infinity() const { return c_ == 0; }

  /// Linear fractional action of an integer matrix with nonzero determinant.
  CuspPoint transformed(const Mat2& g) const { return make(g.a * a_ + g.b * c_, g.c * a_ + g.d * c_); }

  std::string to_string() const {
    if (is_infinity()) return "inf";
    if (c_ == 1) return std::to_string(a_);
    return std::to_string(a_) + "/" + std::to_string(c_);
  }

  friend bool operator==(const CuspPoint&, const CuspPoint&) = default;
  friend auto operator<=>(const CuspPoint& x, const CuspPoint& y) {
    if (auto cmp = x.c_ <=> y.c_; cmp != 0) return cmp;
    return x.a_ <=> y.a_;
  }
  friend std::ostream& operator<<(std::ostream& os, const CuspPoint& x) { return os << x.to_string(); }

 private:
  std::int64_t a_ = 1;
  std::int64_t c_ = 0;
};

inline CuspPoint operator*(const Mat2& g, const CuspPoint& x) { return x.transformed(g); }

/// Finite formal Z-linear combination of cusps.
class Divisor {
 public:
  Divisor() = default;
  Divisor(std::initializer_list<std::pair<CuspPoint, std::int64_t>> terms) {
    for (const auto& [x, n] : terms) add(x, n);
  }
  static Divisor point(const CuspPoint& x) { return Divisor{{x, 1}}; }

  Divisor& add(const CuspPoint& x, std::int64_t n) {
    if (n == 0) return *this;
    auto& slot = terms_[x];
    slot += n;
    if (slot == 0) terms_.erase(x);
    return *this;
  }
  Divisor& operator+=(const Divisor& o) {
    for (const auto& [x, n] : o.terms_) add(x, n);
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    for (const auto& [x, n] : o.terms_) add(x, -n);
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (const auto& [x, n] : terms_) d += n;
    return d;
  }
  const std::map<CuspPoint, std::int64_t>& terms() const { return terms_; }

  Divisor transformed(const Mat2& g) const {
    Divisor out;
    for (const auto& [x, n] : terms_) out.add(x.transformed(g), n);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [x, n] : terms_) {
      if (!s.empty()) s += n < 0 ? " - " : " + ";
      else if (n < 0) s += "-";
      const auto m = n < 0 ? -n : n;
      if (m != 1) s += std::to_string(m);
      s += "{" + x.to_string() + "}";
    }
    return s;
  }
  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<CuspPoint, std::int64_t> terms_;
};

/// Divisor of degree 0.
class Divisor0 {
 public:
  Divisor0() = default;
  explicit Divisor0(Divisor d) : d_(std::move(d)) {
    if (d_.degree() != 0) throw DomainError("Divisor0: degree is " + std::to_string(d_.degree()));
  }
  /// {r} - {s}
  static Divisor0 difference(const CuspPoint& r, const CuspPoint& s) {
    return Divisor0(Divisor::point(r) - Divisor::point(s));
  }

  const Divisor& divisor() const { return d_; }
  const std::map<CuspPoint, std::int64_t>& terms() const { return d_.terms(); }
  Divisor0 transformed(const Mat2& g) const { return Divisor0(d_.transformed(g)); }
  std::string to_string() const { return d_.to_string(); }

  friend Divisor0 operator+(const Divisor0& a, const Divisor0& b) { return Divisor0(a.d_ + b.d_); }
  friend Divisor0 operator-(const Divisor0& a, const Divisor0& b) { return Divisor0(a.d_ - b.d_); }
  friend bool operator==(const Divisor0&, const Divisor0&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Divisor0& d) { return os << d.to_string(); }

 private:
  Divisor d_;
};

inline Divisor0 operator*(const Mat2& g, const Divisor0& d) { return d.transformed(g); }

namespace detail {

/// Gamma_1(N) criterion on residues: (a', c') = +-(a + j c, c) mod N for some j.
inline bool cusp_equivalent_mod(std::int64_t n, std::int64_t a, std::int64_t c, std::int64_t a2, std::int64_t c2) {
  a = mod(a, n);
  c = mod(c, n);
  a2 = mod(a2, n);
  c2 = mod(c2, n);
  for (int sign : {1, -1}) {
    if (mod(sign * c, n) != c2) continue;
    for (std::int64_t j = 0; j < n; ++j)
      if (mod(sign * (a + j * c), n) == a2) return true;
  }
  return false;
}

}  // namespace detail

/// Whether x and y lie in the same Gamma_1(N)-orbit.
inline bool cusp_equivalent(std::int64_t n, const CuspPoint& x, const CuspPoint& y) {
  if (n < 1) throw DomainError("cusp_equivalent: level must be >= 1");
  return detail::cusp_equivalent_mod(n, x.num(), x.den(), y.num(), y.den());
}

/// Index of the unique representative equivalent to x, if any.
inline std::optional<std::size_t> classify_cusp(std::int64_t n, const CuspPoint& x, const std::vector<CuspPoint>& reps) {
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (cusp_equivalent(n, x, reps[i])) return i;
  return std::nullopt;
}

/// One representative per Gamma_1(N) cusp: infinity first, then by increasing
/// denominator c <= N and numerator |a| < c N (positive sign first).
inline std::vector<CuspPoint> cusp_representatives(std::int64_t n) {
  if (n < 1) throw DomainError("cusp_representatives: level must be >= 1");
  std::vector<CuspPoint> reps{CuspPoint::infinity()};
  for (std::int64_t c = 1; c <= n; ++c) {
    for (std::int64_t m = 0; m < c * n; ++m) {
      for (std::int64_t a : {m, -m}) {
        if (a == -m && m == 0) continue;
        if (std::gcd(a, c) != 1) continue;
        auto x = CuspPoint::make(a, c);
        if (!classify_cusp(n, x, reps)) reps.push_back(x);
      }
    }
  }
  return reps;
}

/// Number of Gamma_1(N) cusps for N > 4: (1/2) sum_{d | N} phi(d) phi(N/d).
inline std::int64_t gamma1_cusp_count(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += detail::euler_phi(d) * detail::euler_phi(n / d);
  return s / 2;
}

/// Classifies cusps against fixed representatives through a table indexed by (a mod N, c mod N).
class CuspClassifier {
 public:
  CuspClassifier(std::int64_t n, std::vector<CuspPoint> reps) : n_(n), reps_(std::move(reps)) {
    if (n < 1) throw DomainError("CuspClassifier: level must be >= 1");
    for (std::size_t i = 0; i < reps_.size(); ++i)
      for (std::size_t j = i + 1; j < reps_.size(); ++j)
        if (cusp_equivalent(n_, reps_[i], reps_[j]))
          throw DomainError("CuspClassifier: representatives " + reps_[i].to_string() + " and " + reps_[j].to_string() +
                            " are equivalent");
    table_.assign(static_cast<std::size_t>(n_ * n_), -1);
    for (std::int64_t a = 0; a < n_; ++a)
      for (std::int64_t c = 0; c < n_; ++c)
        for (std::size_t i = 0; i < reps_.size(); ++i)
          if (detail::cusp_equivalent_mod(n_, a, c, reps_[i].num(), reps_[i].den())) {
            table_[a * n_ + c] = static_cast<int>(i);
            break;
          }
  }

  std::optional<std::size_t> operator()(const CuspPoint& x) const {
    const int i = table_[detail::mod(x.num(), n_) * n_ + detail::mod(x.den(), n_)];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
  }
  std::int64_t level() const { return n_; }
  const std::vector<CuspPoint>& representatives() const { return reps_; }

 private:
  std::int64_t n_;
  std::vector<CuspPoint> reps_;
  std::vector<int> table_;
};

}  // namespace taumt
