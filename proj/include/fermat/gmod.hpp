#pragma once

// Graded free modules over A(p) and homogeneous maps between them.
//
// Conventions (used consistently everywhere):
//   * A(s⃗) denotes the rank-one free module with A(s⃗)_u = A_{s⃗+u}; its
//     generator therefore sits in internal degree -s⃗.
//   * A map ⊕_j A(s_j) → ⊕_i A(t_i) is a matrix of algebra elements with
//     entry (i, j) homogeneous of degree t_i - s_j (rows = target summands).
//   * The scalar matrix of a map on the degree-u piece uses summand-major
//     bases: summand j contributes graded_piece_basis(w, s_j + u) in order.
//   * compose(g, f) = g ∘ f ("g after f").

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "grading.hpp"
#include "linalg.hpp"

namespace fermat {

class FreeModule {
 public:
  FreeModule(const Weight& w, std::vector<GradeElement> shifts)
      : w_(w), shifts_(std::move(shifts)) {
    for (const GradeElement& s : shifts_)
      detail::check_same_weight(w_, s.weight(), "FreeModule");
  }

  static FreeModule rank_one(const Weight& w) {
    return FreeModule(w, {GradeElement::zero(w)});
  }
  static FreeModule zero(const Weight& w) { return FreeModule(w, {}); }

  const Weight& weight() const { return w_; }
  std::size_t rank() const { return shifts_.size(); }
  const std::vector<GradeElement>& shifts() const { return shifts_; }
  const GradeElement& shift(std::size_t j) const { return shifts_.at(j); }

  FreeModule twist(const GradeElement& n) const {
    std::vector<GradeElement> out;
    out.reserve(shifts_.size());
    for (const GradeElement& s : shifts_) out.push_back(s + n);
    return FreeModule(w_, std::move(out));
  }

  std::int64_t dim_piece(const GradeElement& u) const {
    std::int64_t d = 0;
    for (const GradeElement& s : shifts_) d += dim_graded_piece(w_, s + u);
    return d;
  }

  // Ordered basis of the degree-u piece: summand-major, then the graded
  // piece basis of A_{s_j+u}.
  struct BasisElement {
    std::size_t summand;
    Monomial mon;
  };
  std::vector<BasisElement> basis_piece(const GradeElement& u) const {
    std::vector<BasisElement> out;
    for (std::size_t j = 0; j < shifts_.size(); ++j)
      for (const Monomial& m : graded_piece_basis(w_, shifts_[j] + u))
        out.push_back({j, m});
    return out;
  }

  friend bool operator==(const FreeModule& a, const FreeModule& b) {
    return a.w_ == b.w_ && a.shifts_ == b.shifts_;
  }
  friend bool operator!=(const FreeModule& a, const FreeModule& b) {
    return !(a == b);
  }

 private:
  Weight w_;
  std::vector<GradeElement> shifts_;
};

template <class K>
class ModuleMap {
 public:
  // Entries row-major, rows = target.rank(), cols = source.rank(). Every
  // nonzero entry must be homogeneous of degree target.shift(i) -
  // source.shift(j); anything else is a construction error.
  ModuleMap(FreeModule source, FreeModule target,
            std::vector<AlgebraElement<K>> entries)
      : source_(std::move(source)),
        target_(std::move(target)),
        entries_(std::move(entries)) {
    detail::check_same_weight(source_.weight(), target_.weight(), "ModuleMap");
    if (entries_.size() != source_.rank() * target_.rank())
      throw std::invalid_argument("ModuleMap: entry count mismatch");
    for (std::size_t i = 0; i < target_.rank(); ++i)
      for (std::size_t j = 0; j < source_.rank(); ++j) {
        const AlgebraElement<K>& e = at(i, j);
        if (e.is_zero()) continue;
        auto d = e.degree();
        if (!d || *d != target_.shift(i) - source_.shift(j))
          throw std::invalid_argument(
              "ModuleMap: entry (" + std::to_string(i) + "," +
              std::to_string(j) + ") has wrong degree");
      }
  }

  static ModuleMap zero(const FreeModule& source, const FreeModule& target) {
    std::vector<AlgebraElement<K>> e(
        source.rank() * target.rank(),
        AlgebraElement<K>(source.weight()));
    return ModuleMap(source, target, std::move(e));
  }

  static ModuleMap identity(const FreeModule& m) {
    ModuleMap out = zero(m, m);
    for (std::size_t i = 0; i < m.rank(); ++i)
      out.entries_[i * m.rank() + i] = AlgebraElement<K>::one(m.weight());
    return out;
  }

  const FreeModule& source() const { return source_; }
  const FreeModule& target() const { return target_; }
  const Weight& weight() const { return source_.weight(); }

  const AlgebraElement<K>& at(std::size_t i, std::size_t j) const {
    return entries_.at(i * source_.rank() + j);
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  ModuleMap twist(const GradeElement& n) const {
    return ModuleMap(source_.twist(n), target_.twist(n), entries_);
  }

  friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
    if (a.source_ != b.source_ || a.target_ != b.target_)
      throw std::invalid_argument("ModuleMap+: shape mismatch");
    std::vector<AlgebraElement<K>> e;
    e.reserve(a.entries_.size());
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      e.push_back(a.entries_[k] + b.entries_[k]);
    return ModuleMap(a.source_, a.target_, std::move(e));
  }

  friend bool operator==(const ModuleMap& a, const ModuleMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const ModuleMap& a, const ModuleMap& b) {
    return !(a == b);
  }

 private:
  FreeModule source_, target_;
  std::vector<AlgebraElement<K>> entries_;
};

// g ∘ f: apply f first.
template <class K>
ModuleMap<K> compose(const ModuleMap<K>& g, const ModuleMap<K>& f) {
  if (g.source() != f.target())
    throw std::invalid_argument("compose: g.source must equal f.target");
  const Weight& w = f.weight();
  std::vector<AlgebraElement<K>> e(g.target().rank() * f.source().rank(),
                                   AlgebraElement<K>(w));
  for (std::size_t i = 0; i < g.target().rank(); ++i)
    for (std::size_t j = 0; j < f.source().rank(); ++j) {
      AlgebraElement<K> acc(w);
      for (std::size_t k = 0; k < f.target().rank(); ++k)
        acc = acc + g.at(i, k) * f.at(k, j);
      e[i * f.source().rank() + j] = acc;
    }
  return ModuleMap<K>(f.source(), g.target(), std::move(e));
}

// Scalar matrix of f on the degree-u piece, in the summand-major bases of
// FreeModule::basis_piece.
template <class K>
Matrix<K> graded_piece_matrix(const ModuleMap<K>& f, const GradeElement& u) {
  const Weight& w = f.weight();
  const FreeModule& src = f.source();
  const FreeModule& tgt = f.target();
  std::vector<std::size_t> row_off(tgt.rank() + 1, 0);
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    row_off[i + 1] =
        row_off[i] +
        static_cast<std::size_t>(dim_graded_piece(w, tgt.shift(i) + u));
  std::vector<std::size_t> col_off(src.rank() + 1, 0);
  for (std::size_t j = 0; j < src.rank(); ++j)
    col_off[j + 1] =
        col_off[j] +
        static_cast<std::size_t>(dim_graded_piece(w, src.shift(j) + u));

  Matrix<K> m(row_off.back(), col_off.back());
  for (std::size_t j = 0; j < src.rank(); ++j) {
    auto basis_j = graded_piece_basis(w, src.shift(j) + u);
    for (std::size_t bj = 0; bj < basis_j.size(); ++bj) {
      auto mon = AlgebraElement<K>::monomial(w, K(1), basis_j[bj].ex,
                                             basis_j[bj].ey, basis_j[bj].ez);
      for (std::size_t i = 0; i < tgt.rank(); ++i) {
        const AlgebraElement<K>& entry = f.at(i, j);
        if (entry.is_zero()) continue;
        auto coeffs = coefficients_on_basis(entry * mon, tgt.shift(i) + u);
        for (std::size_t bi = 0; bi < coeffs.size(); ++bi)
          m.at(row_off[i] + bi, col_off[j] + bj) = coeffs[bi];
      }
    }
  }
  return m;
}

// Coefficient of the monomial 1 (needed when collapsing maps along A → k).
template <class K>
K constant_term(const AlgebraElement<K>& e) {
  auto it = e.terms().find(Monomial{0, 0, 0});
  return it == e.terms().end() ? K(0) : it->second;
}

}  // namespace fermat
