#pragma once

// The grading group L(p) of the Fermat hypersurface algebra
//     A(p) = k[x,y,z] / (x^p0 + y^p1 + z^p2).
//
// L(p) is the abelian group on generators x⃗, y⃗, z⃗, c⃗ subject to
//     p0·x⃗ = p1·y⃗ = p2·z⃗ = c⃗,
// so deg x = x⃗, deg y = y⃗, deg z = z⃗ makes A(p) an L(p)-graded ring with the
// defining polynomial homogeneous of degree c⃗. Every element has a unique
// normal form a·x⃗ + b·y⃗ + c·z⃗ + m·c⃗ with 0 ≤ a < p0, 0 ≤ b < p1,
// 0 ≤ c < p2 and m ∈ Z; arithmetic here keeps that form.
//
// The additive map φ: L(p) → Q defined by φ(x⃗) = p2/p0, φ(y⃗) = p2/p1,
// φ(z⃗) = 1 (hence φ(c⃗) = p2) is the exact "size" used for all finite
// enumeration windows.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rational.hpp"

namespace fermat {

struct Weight {
  int p0, p1, p2;

  Weight(int q0, int q1, int q2) : p0(q0), p1(q1), p2(q2) {
    if (p0 < 2 || p1 < 2 || p2 < 2)
      throw std::invalid_argument("Weight: all exponents must be >= 2");
  }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.p0 == b.p0 && a.p1 == b.p1 && a.p2 == b.p2;
  }
  friend bool operator!=(const Weight& a, const Weight& b) {
    return !(a == b);
  }

  std::string str() const {
    return "(" + std::to_string(p0) + "," + std::to_string(p1) + "," +
           std::to_string(p2) + ")";
  }
};

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline void check_same_weight(const Weight& a, const Weight& b,
                              const char* op) {
  if (a != b)
    throw std::invalid_argument(std::string(op) + ": weight mismatch " +
                                a.str() + " vs " + b.str());
}
}  // namespace detail

class GradeElement {
 public:
  // Accepts any integer coefficients on (x⃗, y⃗, z⃗, c⃗) and normalizes.
  GradeElement(const Weight& w, std::int64_t a, std::int64_t b, std::int64_t c,
               std::int64_t m)
      : w_(w), a_(a), b_(b), c_(c), m_(m) {
    std::int64_t q;
    q = detail::floor_div(a_, w_.p0), a_ -= q * w_.p0, m_ += q;
    q = detail::floor_div(b_, w_.p1), b_ -= q * w_.p1, m_ += q;
    q = detail::floor_div(c_, w_.p2), c_ -= q * w_.p2, m_ += q;
  }

  static GradeElement zero(const Weight& w) { return {w, 0, 0, 0, 0}; }
  static GradeElement xgen(const Weight& w) { return {w, 1, 0, 0, 0}; }
  static GradeElement ygen(const Weight& w) { return {w, 0, 1, 0, 0}; }
  static GradeElement zgen(const Weight& w) { return {w, 0, 0, 1, 0}; }
  static GradeElement cgen(const Weight& w) { return {w, 0, 0, 0, 1}; }

  const Weight& weight() const { return w_; }
  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t m() const { return m_; }

  friend GradeElement operator+(const GradeElement& u, const GradeElement& v) {
    detail::check_same_weight(u.w_, v.w_, "GradeElement+");
    return {u.w_, u.a_ + v.a_, u.b_ + v.b_, u.c_ + v.c_, u.m_ + v.m_};
  }
  friend GradeElement operator-(const GradeElement& u, const GradeElement& v) {
    detail::check_same_weight(u.w_, v.w_, "GradeElement-");
    return {u.w_, u.a_ - v.a_, u.b_ - v.b_, u.c_ - v.c_, u.m_ - v.m_};
  }
  GradeElement operator-() const { return {w_, -a_, -b_, -c_, -m_}; }
  friend GradeElement operator*(std::int64_t k, const GradeElement& u) {
    return {u.w_, k * u.a_, k * u.b_, k * u.c_, k * u.m_};
  }

  friend bool operator==(const GradeElement& u, const GradeElement& v) {
    return u.w_ == v.w_ && u.a_ == v.a_ && u.b_ == v.b_ && u.c_ == v.c_ &&
           u.m_ == v.m_;
  }
  friend bool operator!=(const GradeElement& u, const GradeElement& v) {
    return !(u == v);
  }
  // Lexicographic order on the normal form (container key; same weight only).
  friend bool operator<(const GradeElement& u, const GradeElement& v) {
    detail::check_same_weight(u.w_, v.w_, "GradeElement<");
    return std::tie(u.a_, u.b_, u.c_, u.m_) <
           std::tie(v.a_, v.b_, v.c_, v.m_);
  }

  Rational phi() const {
    // a·p2/p0 + b·p2/p1 + c + m·p2, exactly.
    Rational r(a_ * static_cast<std::int64_t>(w_.p2), w_.p0);
    r += Rational(b_ * static_cast<std::int64_t>(w_.p2), w_.p1);
    r += Rational(c_ + m_ * static_cast<std::int64_t>(w_.p2));
    return r;
  }

  std::string str() const {
    return "[" + std::to_string(a_) + "," + std::to_string(b_) + "," +
           std::to_string(c_) + "," + std::to_string(m_) + "]";
  }

 private:
  Weight w_;
  std::int64_t a_, b_, c_, m_;
};

// u lies in N·x⃗ + N·y⃗ + N·z⃗ iff the c⃗-coefficient of its normal form is
// >= 0: rewriting m·c⃗ = m·p0·x⃗ exhibits such a combination, and conversely
// every nonnegative combination carries nonnegative floor carries. The brute
// force enumeration oracle in the test suite pins this equivalence down on
// every window the suite touches.
inline bool in_positive_span(const GradeElement& u) { return u.m() >= 0; }

// L₊ = { -2c⃗ + a·x⃗ + b·y⃗ + c·z⃗ : a, b, c >= 1 }. Membership reduces to a
// positive-span test after the affine shift.
inline bool in_L_plus(const GradeElement& u) {
  const Weight& w = u.weight();
  GradeElement shifted = u + 2 * GradeElement::cgen(w) -
                         GradeElement::xgen(w) - GradeElement::ygen(w) -
                         GradeElement::zgen(w);
  return in_positive_span(shifted);
}

// All normal forms u with lo <= φ(u) <= hi, sorted by (φ(u), a, b, c).
// For each residue triple (a,b,c) the c⃗-coefficient m ranges over the
// integers keeping φ inside the window, so the result is finite and exact.
inline std::vector<GradeElement> enumerate_window(const Weight& w,
                                                  const Rational& lo,
                                                  const Rational& hi) {
  std::vector<GradeElement> out;
  if (lo > hi) return out;
  for (int a = 0; a < w.p0; ++a)
    for (int b = 0; b < w.p1; ++b)
      for (int c = 0; c < w.p2; ++c) {
        Rational base = GradeElement(w, a, b, c, 0).phi();
        std::int64_t m_lo = ceil_rational((lo - base) / w.p2);
        std::int64_t m_hi = floor_rational((hi - base) / w.p2);
        for (std::int64_t m = m_lo; m <= m_hi; ++m)
          out.emplace_back(w, a, b, c, m);
      }
  std::sort(out.begin(), out.end(),
            [](const GradeElement& u, const GradeElement& v) {
              Rational pu = u.phi(), pv = v.phi();
              if (pu != pv) return pu < pv;
              return std::make_tuple(u.a(), u.b(), u.c()) <
                     std::make_tuple(v.a(), v.b(), v.c());
            });
  return out;
}

}  // namespace fermat
