#pragma once

// Level-1 modular symbols of weight k as Manin symbols: the value x of the
// symbol on {inf} - {0}, a homogeneous polynomial of degree k - 2 subject to
//   x + x|S = 0,  x + x|U + x|U^2 = 0,
// with the right action (P|g)(X, Y) = P(dX - cY, -bX + aY).

#include "taumt/arith.hpp"
#include "taumt/cusps.hpp"
#include "taumt/linalg.hpp"
#include "taumt/qseries.hpp"

#include <functional>
#include <string>
#include <vector>

namespace taumt {

/// Homogeneous polynomial of fixed degree g; coefficient i belongs to X^i Y^(g-i).
template <class T>
class HomogPoly {
 public:
  HomogPoly() = default;
  explicit HomogPoly(int degree) : c_(static_cast<std::size_t>(degree + 1), T(0)) {}
  explicit HomogPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("HomogPoly: empty coefficient vector");
  }
  static HomogPoly monomial(int degree, int i) {
    HomogPoly p(degree);
    p.c_.at(static_cast<std::size_t>(i)) = T(1);
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  T& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  /// P(x, y).
  T evaluate(const T& x, const T& y) const {
    // homogeneous Horner: ((c_g x + c_{g-1} y) x + c_{g-2} y^2) ...
    T acc(0);
    T ypow(1);
    for (int i = degree(); i >= 0; --i) {
      acc = acc * x + c_[static_cast<std::size_t>(i)] * ypow;
      if (i > 0) ypow *= y;
    }
    return acc;
  }

  /// P(0, 1): the Y^g coefficient.
  const T& at_zero_one() const { return c_[0]; }

  /// (P|g)(X, Y) = P(dX - cY, -bX + aY).
  HomogPoly act(const Mat2& m) const {
    const int g = degree();
    const auto l1 = linear_powers(m.d, -m.c, g);  // (dX - cY)^i
    const auto l2 = linear_powers(-m.b, m.a, g);  // (-bX + aY)^j
    HomogPoly out(g);
    for (int i = 0; i <= g; ++i) {
      const T& ci = c_[static_cast<std::size_t>(i)];
      if (ci == 0) continue;
      const auto& u = l1[static_cast<std::size_t>(i)];
      const auto& v = l2[static_cast<std::size_t>(g - i)];
      for (std::size_t s = 0; s < u.size(); ++s) {
        if (u[s] == 0) continue;
        const T cu = ci * u[s];
        for (std::size_t t = 0; t < v.size(); ++t) out.c_[s + t] += cu * v[t];
      }
    }
    return out;
  }

  HomogPoly& operator+=(const HomogPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  HomogPoly& operator-=(const HomogPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  HomogPoly& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator*(const T& s, HomogPoly a) { return a *= s; }
  HomogPoly operator-() const {
    HomogPoly out(*this);
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

  std::string to_string() const {
    std::string s;
    const int g = degree();
    for (int i = g; i >= 0; --i) {
      const T& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + v.str() + ")";
      if (i > 0) s += "*X^" + std::to_string(i);
      if (g - i > 0) s += "*Y^" + std::to_string(g - i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  /// Coefficient vectors of (pX + qY)^i, i = 0..g (index = power of X).
  static std::vector<std::vector<T>> linear_powers(std::int64_t p, std::int64_t q, int g) {
    std::vector<std::vector<T>> out;
    out.push_back({T(1)});
    for (int i = 1; i <= g; ++i) {
      const auto& prev = out.back();
      std::vector<T> next(prev.size() + 1, T(0));
      for (std::size_t s = 0; s < prev.size(); ++s) {
        next[s] += prev[s] * T(q);
        next[s + 1] += prev[s] * T(p);
      }
      out.push_back(std::move(next));
    }
    return out;
  }

  void check(const HomogPoly& o) const {
    if (o.c_.size() != c_.size()) throw DomainError("HomogPoly: degree mismatch");
  }

  std::vector<T> c_;
};

/// Level-1 modular symbol of weight k, stored as its value on {inf} - {0}.
template <class T>
struct ManinSymbol {
  HomogPoly<T> x;
  int weight = 0;

  /// Both relations hold exactly.
  bool satisfies_relations() const {
    const auto two = x + x.act(mats::S);
    const auto three = x + x.act(mats::U) + x.act(mats::U * mats::U);
    return two.is_zero() && three.is_zero();
  }
  ManinSymbol act(const Mat2& m) const { return {x.act(m), weight}; }
  friend bool operator==(const ManinSymbol&, const ManinSymbol&) = default;
};

namespace detail {

template <class T>
linalg::Vec to_vec(const HomogPoly<T>& p) {
  linalg::Vec v;
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return v;
}

inline HomogPoly<Rational> from_vec(const linalg::Vec& v) { return HomogPoly<Rational>(v); }

/// Columns are images of monomials under `op`; returns matrix of op on V_g.
inline linalg::Matrix operator_matrix(int g, const std::function<HomogPoly<Rational>(const HomogPoly<Rational>&)>& op) {
  linalg::Matrix m(static_cast<std::size_t>(g + 1), linalg::Vec(static_cast<std::size_t>(g + 1), Rational(0)));
  for (int j = 0; j <= g; ++j) {
    const auto img = op(HomogPoly<Rational>::monomial(g, j));
    for (int i = 0; i <= g; ++i) m[i][j] = img[i];
  }
  return m;
}

/// Basis of {sum c_i b_i : op(sum c_i b_i) = lambda sum c_i b_i} inside span(basis).
inline std::vector<ManinSymbol<Rational>> eigen_subspace(
    const std::vector<ManinSymbol<Rational>>& basis,
    const std::function<HomogPoly<Rational>(const HomogPoly<Rational>&)>& op, const Rational& lambda) {
  if (basis.empty()) return {};
  const int g = basis[0].x.degree();
  linalg::Matrix m(static_cast<std::size_t>(g + 1), linalg::Vec(basis.size(), Rational(0)));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto img = op(basis[j].x) - lambda * basis[j].x;
    for (int i = 0; i <= g; ++i) m[i][j] = img[i];
  }
  std::vector<ManinSymbol<Rational>> out;
  for (const auto& c : linalg::kernel(m, basis.size())) {
    HomogPoly<Rational> acc(g);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (c[j] != 0) acc += c[j] * basis[j].x;
    out.push_back({acc, basis[0].weight});
  }
  return out;
}

}  // namespace detail

/// Basis over Q of level-1 Manin symbols of weight k (k even, k >= 4).
inline std::vector<ManinSymbol<Rational>> manin_space(int k) {
  if (k < 4 || k % 2 != 0) throw DomainError("manin_space: weight must be even and >= 4");
  const int g = k - 2;
  const auto two = detail::operator_matrix(g, [](const HomogPoly<Rational>& p) { return p + p.act(mats::S); });
  const auto three = detail::operator_matrix(g, [](const HomogPoly<Rational>& p) {
    return p + p.act(mats::U) + p.act(mats::U * mats::U);
  });
  linalg::Matrix stacked = two;
  stacked.insert(stacked.end(), three.begin(), three.end());
  std::vector<ManinSymbol<Rational>> basis;
  for (const auto& v : linalg::kernel(stacked, static_cast<std::size_t>(g + 1)))
    basis.push_back({detail::from_vec(v), k});
  return basis;
}

/// Involution induced by iota = [[-1, 0], [0, 1]]: x -> x|iota.
template <class T>
ManinSymbol<T> star_involution(const ManinSymbol<T>& s) {
  return s.act(mats::iota);
}

/// The +1-eigenspace of the iota involution inside span(basis).
inline std::vector<ManinSymbol<Rational>> plus_subspace(const std::vector<ManinSymbol<Rational>>& basis) {
  return detail::eigen_subspace(basis, [](const HomogPoly<Rational>& p) { return p.act(mats::iota); }, Rational(1));
}

/// Merel's Heilbronn matrices of determinant l: a > b >= 0, d > c >= 0.
inline std::vector<Mat2> heilbronn_merel(std::int64_t l) {
  if (l < 1) throw DomainError("heilbronn_merel: determinant must be positive");
  std::vector<Mat2> out;
  for (std::int64_t a = 1; a <= l; ++a)
    for (std::int64_t d = 1; d <= l; ++d)
      for (std::int64_t b = 0; b < a; ++b)
        for (std::int64_t c = 0; c < d; ++c)
          if (a * d - b * c == l) out.push_back({a, b, c, d});
  return out;
}

/// Path decomposition {r} - {inf} = sum_i ({g_i inf} - {g_i 0}), det g_i = 1, from the
/// continued-fraction convergents of r.
inline std::vector<Mat2> unimodular_path(const CuspPoint& r) {
  std::vector<Mat2> out;
  if (r.is_infinity()) return out;
  std::int64_t num = r.num(), den = r.den();
  std::int64_t p_prev = 1, q_prev = 0;   // p_{-1}/q_{-1} = inf
  std::int64_t p_prev2 = 0, q_prev2 = 1;  // p_{-2}/q_{-2}
  int i = 0;
  while (den != 0) {
    std::int64_t a = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --a;  // floor
    const std::int64_t rem = num - a * den;
    const std::int64_t p = a * p_prev + p_prev2;
    const std::int64_t q = a * q_prev + q_prev2;
    Mat2 g{p, p_prev, q, q_prev};  // det = (-1)^(i-1)
    if (g.det() == -1) g = Mat2{p, -p_prev, q, -q_prev};
    if (g.det() != 1) throw InternalError("unimodular_path: non-unimodular step");
    out.push_back(g);
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    num = den;
    den = rem;
    ++i;
  }
  return out;
}

/// phi({r} - {inf}) for the symbol with Manin value x.
template <class T>
HomogPoly<T> eval_from_infinity(const ManinSymbol<T>& s, const CuspPoint& r) {
  HomogPoly<T> acc(s.x.degree());
  for (const auto& g : unimodular_path(r)) acc += s.x.act(g.inverse());
  return acc;
}

/// Value of the symbol on a degree-0 divisor: sum n_i phi({r_i} - {inf}).
template <class T>
HomogPoly<T> eval_symbol(const ManinSymbol<T>& s, const Divisor0& d) {
  HomogPoly<T> acc(s.x.degree());
  for (const auto& [r, n] : d.terms()) {
    if (r.is_infinity()) continue;
    acc += T(n) * eval_from_infinity(s, r);
  }
  return acc;
}

/// Same value through {r} - {inf} = S({S^{-1} r} - {inf}) + ({0} - {inf}).
template <class T>
HomogPoly<T> eval_symbol_via_zero(const ManinSymbol<T>& s, const Divisor0& d) {
  const Mat2 s_inv = mats::S.inverse();
  HomogPoly<T> acc(s.x.degree());
  for (const auto& [r, n] : d.terms()) {
    if (r.is_infinity()) continue;
    HomogPoly<T> v = -s.x;  // phi({0} - {inf})
    const auto shifted = r.transformed(s_inv);
    if (!shifted.is_infinity()) v += eval_from_infinity(s, shifted).act(s_inv);
    acc += T(n) * v;
  }
  return acc;
}

/// T_l by the Heilbronn-Merel matrices: x -> sum_h x|adj(h).
template <class T>
ManinSymbol<T> hecke_T(std::int64_t l, const ManinSymbol<T>& s) {
  if (!detail::is_prime(l)) throw DomainError("hecke_T: l must be prime");
  HomogPoly<T> acc(s.x.degree());
  for (const auto& h : heilbronn_merel(l)) acc += s.x.act(h.adjugate());
  ManinSymbol<T> out{acc, s.weight};
  if (!out.satisfies_relations()) throw InternalError("hecke_T: image violates the Manin relations");
  return out;
}

/// T_l from the double coset decomposition Gamma diag(1,l) Gamma = U Gamma [[a,b],[0,d]]
/// (ad = l, 0 <= b < d): x -> sum phi({inf} - {b/d})|[[a,b],[0,d]].
template <class T>
ManinSymbol<T> hecke_T_by_cosets(std::int64_t l, const ManinSymbol<T>& s) {
  if (!detail::is_prime(l)) throw DomainError("hecke_T_by_cosets: l must be prime");
  HomogPoly<T> acc(s.x.degree());
  for (std::int64_t d : {std::int64_t{1}, l}) {
    const std::int64_t a = l / d;
    for (std::int64_t b = 0; b < d; ++b) {
      const Mat2 m{a, b, 0, d};
      const auto cusp = CuspPoint::make(b, d);
      acc += (-eval_from_infinity(s, cusp)).act(m);
    }
  }
  return {acc, s.weight};
}

/// Scales a rational symbol to coprime integer coefficients with positive leading nonzero entry.
inline ManinSymbol<BigInt> primitive_integral(const ManinSymbol<Rational>& s) {
  BigInt den = 1;
  for (const auto& c : s.x.coeffs()) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
  std::vector<BigInt> ints;
  BigInt content = 0;
  for (const auto& c : s.x.coeffs()) {
    BigInt v = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
    content = boost::multiprecision::gcd(content, v);
    ints.push_back(v);
  }
  if (content == 0) throw DomainError("primitive_integral: zero symbol");
  BigInt sign = 1;
  for (auto it = ints.rbegin(); it != ints.rend(); ++it)
    if (*it != 0) {
      sign = *it < 0 ? -1 : 1;
      break;
    }
  for (auto& v : ints) v = v / content * sign;
  return {HomogPoly<BigInt>(std::move(ints)), s.weight};
}

template <class T>
BigInt content(const ManinSymbol<T>& s) {
  BigInt g = 0;
  for (const auto& c : s.x.coeffs()) g = boost::multiprecision::gcd(g, BigInt(c));
  return g;
}

inline ManinSymbol<Rational> to_rational(const ManinSymbol<BigInt>& s) {
  std::vector<Rational> v;
  for (const auto& c : s.x.coeffs()) v.emplace_back(c);
  return {HomogPoly<Rational>(std::move(v)), s.weight};
}

/// Primitive integral generator of the T_2-eigenline with eigenvalue tau(2) = -24 in the
/// plus subspace of weight 12: Delta's plus symbol up to a unit at every prime.
inline ManinSymbol<BigInt> delta_symbol() {
  const auto plus = plus_subspace(manin_space(12));
  const BigInt tau2 = tau_expansion(2).coeffs[2];
  const auto line = detail::eigen_subspace(
      plus, [](const HomogPoly<Rational>& p) { return hecke_T<Rational>(2, ManinSymbol<Rational>{p, 12}).x; },
      Rational(tau2));
  if (line.size() != 1) throw InternalError("delta_symbol: eigenline is not one-dimensional");
  return primitive_integral(line[0]);
}

/// delta_symbol() checked to be nonzero mod p^m for the requested prime.
inline ManinSymbol<BigInt> delta_symbol(std::int64_t p, int m) {
  if (!detail::is_prime(p) || m < 1) throw DomainError("delta_symbol: need a prime p and m >= 1");
  auto s = delta_symbol();
  if (content(s) % p == 0) throw InternalError("delta_symbol: symbol vanishes mod p");
  return s;
}

/// gcd of x(c, d) over all integer pairs; the grid [0, k-2]^2 already generates the value ideal,
/// and homogeneity makes the gcd over coprime pairs the same.
inline BigInt value_content(const ManinSymbol<BigInt>& s) {
  const int g = s.x.degree();
  BigInt acc = 0;
  for (int c = 0; c <= g; ++c)
    for (int d = 0; d <= g; ++d) acc = boost::multiprecision::gcd(acc, s.x.evaluate(BigInt(c), BigInt(d)));
  return acc;
}

/// The weight-0 symbol D -> eval_symbol(x, D)(0, 1) / value_content(x) mod N.
/// Dividing by the value content makes the period lattice primitive; at p = 3 the
/// coefficient-primitive Delta symbol has every value divisible by 9.
class AlphaSymbol {
 public:
  AlphaSymbol(ManinSymbol<BigInt> x, std::int64_t n, bool normalize = true)
      : x_(std::move(x)), ring_(ResidueRing::of_modulus(n)), scale_(normalize ? value_content(x_) : BigInt(1)) {
    if (scale_ == 0) throw DomainError("AlphaSymbol: zero symbol");
  }

  /// Sum over path steps g of (x|g^{-1})(0, 1) = x(c_g, d_g), reduced mod N.
  Residue operator()(const Divisor0& d) const {
    Residue acc(ring_, 0);
    for (const auto& [r, n] : d.terms()) {
      if (r.is_infinity()) continue;
      acc += Residue(ring_, n) * from_infinity(r);
    }
    return acc;
  }
  /// alpha({r} - {s}).
  Residue difference(const CuspPoint& r, const CuspPoint& s) const { return (*this)(Divisor0::difference(r, s)); }

  const ResidueRing& ring() const { return ring_; }
  const ManinSymbol<BigInt>& symbol() const { return x_; }
  const BigInt& scale() const { return scale_; }

 private:
  Residue from_infinity(const CuspPoint& r) const {
    BigInt acc = 0;
    for (const auto& g : unimodular_path(r)) acc += x_.x.evaluate(BigInt(g.c), BigInt(g.d));
    return {ring_, acc / scale_};
  }

  ManinSymbol<BigInt> x_;
  ResidueRing ring_;
  BigInt scale_;
};

/// D -> eval_symbol(x, D)(0, 1) mod N with no rescaling: Gamma_1(N)-invariant for integral x.
inline AlphaSymbol alpha_N(const ManinSymbol<BigInt>& x, std::int64_t n) { return AlphaSymbol(x, n, false); }

/// alpha_N after dividing by the value content. For N prime to the content this is a unit multiple
/// of alpha_N; at N = 9 it is the map whose values match the mod-9 table, and it is only
/// Gamma_1(27)-invariant there, not Gamma_1(9)-invariant.
inline AlphaSymbol normalized_alpha(const ManinSymbol<BigInt>& x, std::int64_t n) { return AlphaSymbol(x, n, true); }

}  // namespace taumt
