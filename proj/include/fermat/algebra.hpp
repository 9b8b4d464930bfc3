#pragma once

// The L(p)-graded algebra A(p) = k[x,y,z] / (x^p0 + y^p1 + z^p2).
//
// Elements are kept in reduced form: every monomial satisfies ex < p0, and
// the single rewrite x^p0 → -(y^p1 + z^p2) is applied eagerly. Reduced
// monomials are a k-basis of A(p), so equality is literal term comparison.
//
// The graded piece A_u is nonzero exactly when the normal form of u has
// c⃗-coefficient m ≥ 0, in which case it has dimension m + 1 with basis
//     x^a · y^(b + j·p1) · z^(c + (m-j)·p2),   j = 0, …, m
// (a, b, c the residues of u). The test suite validates both statements
// against a presentation-independent rank computation in k[x,y,z].

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grading.hpp"
#include "rational.hpp"

namespace fermat {

struct Monomial {
  std::int64_t ex = 0, ey = 0, ez = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline GradeElement monomial_degree(const Weight& w, const Monomial& m) {
  return GradeElement(w, m.ex, m.ey, m.ez, 0);
}

namespace detail {

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// Rewrite x^E y^F z^G into reduced monomials with integer coefficients:
// with E = q·p0 + r (0 ≤ r < p0),
//   x^E = x^r · (-1)^q · Σ_i C(q,i) · y^(p1·i) · z^(p2·(q-i)).
inline std::vector<std::pair<Monomial, Integer>> reduce_monomial(
    const Weight& w, std::int64_t e0, std::int64_t e1, std::int64_t e2) {
  if (e0 < 0 || e1 < 0 || e2 < 0)
    throw std::invalid_argument("reduce_monomial: negative exponent");
  std::int64_t q = e0 / w.p0, r = e0 % w.p0;
  std::vector<std::pair<Monomial, Integer>> out;
  out.reserve(static_cast<std::size_t>(q) + 1);
  Integer sign = (q % 2 == 0) ? 1 : -1;
  for (std::int64_t i = 0; i <= q; ++i)
    out.push_back({Monomial{r, e1 + w.p1 * i, e2 + w.p2 * (q - i)},
                   sign * binomial(q, i)});
  return out;
}

}  // namespace detail

template <class K>
class AlgebraElement {
 public:
  explicit AlgebraElement(const Weight& w) : w_(w) {}

  static AlgebraElement zero(const Weight& w) { return AlgebraElement(w); }

  // coeff · x^e0 y^e1 z^e2, reduced.
  static AlgebraElement monomial(const Weight& w, const K& coeff,
                                 std::int64_t e0, std::int64_t e1,
                                 std::int64_t e2) {
    AlgebraElement out(w);
    for (const auto& [mon, c] : detail::reduce_monomial(w, e0, e1, e2))
      out.add_term(mon, coeff * K(c));
    return out;
  }

  static AlgebraElement one(const Weight& w) {
    return monomial(w, K(1), 0, 0, 0);
  }

  // variable(w, 0) = x, variable(w, 1) = y, variable(w, 2) = z.
  static AlgebraElement variable(const Weight& w, int idx) {
    if (idx < 0 || idx > 2)
      throw std::invalid_argument("variable: index must be 0, 1, or 2");
    return monomial(w, K(1), idx == 0 ? 1 : 0, idx == 1 ? 1 : 0,
                    idx == 2 ? 1 : 0);
  }

  const Weight& weight() const { return w_; }
  const std::map<Monomial, K>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    GradeElement d = monomial_degree(w_, terms_.begin()->first);
    for (const auto& [mon, c] : terms_)
      if (monomial_degree(w_, mon) != d) return false;
    return true;
  }

  // Degree of a nonzero homogeneous element; nullopt for zero or mixed.
  std::optional<GradeElement> degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return monomial_degree(w_, terms_.begin()->first);
  }

  friend AlgebraElement operator+(const AlgebraElement& a,
                                  const AlgebraElement& b) {
    detail::check_same_weight(a.w_, b.w_, "AlgebraElement+");
    AlgebraElement out = a;
    for (const auto& [mon, c] : b.terms_) out.add_term(mon, c);
    return out;
  }
  friend AlgebraElement operator-(const AlgebraElement& a,
                                  const AlgebraElement& b) {
    return a + (-b);
  }
  AlgebraElement operator-() const {
    AlgebraElement out(w_);
    for (const auto& [mon, c] : terms_) out.terms_.emplace(mon, -c);
    return out;
  }
  friend AlgebraElement operator*(const K& s, const AlgebraElement& a) {
    AlgebraElement out(a.w_);
    if (fermat::is_zero(s)) return out;
    for (const auto& [mon, c] : a.terms_) {
      K v = s * c;
      if (!fermat::is_zero(v)) out.terms_.emplace(mon, v);
    }
    return out;
  }
  friend AlgebraElement operator*(const AlgebraElement& a,
                                  const AlgebraElement& b) {
    detail::check_same_weight(a.w_, b.w_, "AlgebraElement*");
    AlgebraElement out(a.w_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        K c = ca * cb;
        for (const auto& [mon, n] : detail::reduce_monomial(
                 a.w_, ma.ex + mb.ex, ma.ey + mb.ey, ma.ez + mb.ez))
          out.add_term(mon, c * K(n));
      }
    return out;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.w_ == b.w_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) {
    return !(a == b);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    auto var = [](const char* name, std::int64_t e) -> std::string {
      if (e == 0) return "";
      if (e == 1) return name;
      return std::string(name) + "^" + std::to_string(e);
    };
    for (const auto& [mon, c] : terms_) {
      if (!s.empty()) s += " + ";
      std::string body;
      for (const auto& part :
           {var("x", mon.ex), var("y", mon.ey), var("z", mon.ez)}) {
        if (part.empty()) continue;
        if (!body.empty()) body += "*";
        body += part;
      }
      std::string coeff = scalar_to_string(c);
      if (body.empty())
        s += coeff;
      else if (coeff == "1")
        s += body;
      else if (coeff == "-1")
        s += "-" + body;
      else
        s += coeff + "*" + body;
    }
    return s;
  }

 private:
  void add_term(const Monomial& mon, const K& c) {
    if (fermat::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(mon, c);
    if (!fresh) {
      it->second = it->second + c;
      if (fermat::is_zero(it->second)) terms_.erase(it);
    }
  }

  Weight w_;
  std::map<Monomial, K> terms_;
};

template <class K>
AlgebraElement<K> power(const AlgebraElement<K>& a, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("power: negative exponent");
  AlgebraElement<K> out = AlgebraElement<K>::one(a.weight());
  for (std::int64_t i = 0; i < e; ++i) out = out * a;
  return out;
}

inline std::int64_t dim_graded_piece(const Weight&, const GradeElement& u) {
  return u.m() >= 0 ? u.m() + 1 : 0;
}

// Ordered basis of A_u: ascending power of y (index j above).
inline std::vector<Monomial> graded_piece_basis(const Weight& w,
                                                const GradeElement& u) {
  std::vector<Monomial> out;
  if (u.m() < 0) return out;
  for (std::int64_t j = 0; j <= u.m(); ++j)
    out.push_back(
        Monomial{u.a(), u.b() + j * w.p1, u.c() + (u.m() - j) * w.p2});
  return out;
}

// Expands a homogeneous element of degree u on graded_piece_basis(w, u).
// Every reduced monomial of degree u is exactly one basis element, so this is
// coefficient lookup; a term of any other degree is an error.
template <class K>
std::vector<K> coefficients_on_basis(const AlgebraElement<K>& e,
                                     const GradeElement& u) {
  const Weight& w = e.weight();
  std::vector<K> out(static_cast<std::size_t>(dim_graded_piece(w, u)), K(0));
  for (const auto& [mon, c] : e.terms()) {
    if (monomial_degree(w, mon) != u)
      throw std::invalid_argument(
          "coefficients_on_basis: term of degree " +
          monomial_degree(w, mon).str() + " in piece " + u.str());
    std::int64_t j = (mon.ey - u.b()) / w.p1;
    if (j < 0 || j > u.m() || mon.ey != u.b() + j * w.p1 ||
        mon.ez != u.c() + (u.m() - j) * w.p2 || mon.ex != u.a())
      throw std::logic_error("coefficients_on_basis: unreduced term");
    out[static_cast<std::size_t>(j)] = c;
  }
  return out;
}

}  // namespace fermat
