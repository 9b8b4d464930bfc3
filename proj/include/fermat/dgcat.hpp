#pragma once

// Finite DG categories with explicit graded hom bases. Differentials and
// compositions are stored as basis-indexed tables, which keeps every sign
// auditable; the categories built here (directed A-type quivers and their
// tensor products) are tiny, so tables cost nothing.
//
// Composition is written traditionally: compose_basis(i, j, k, f, g) is g∘f
// for f: E_i → E_j applied first and g: E_j → E_k applied second. The tensor
// product carries the Koszul sign
//     (f⊗v)∘(g⊗w) = (−1)^{deg v · deg g} (f∘g)⊗(v∘w),
// and the differential obeys d(f⊗v) = (df)⊗v + (−1)^{deg f} f⊗(dv).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace fermat {

// Linear combination of basis elements of a single hom space, by basis index.
template <class K>
using LinComb = std::map<std::size_t, K>;

namespace detail {

template <class K>
void add_term(LinComb<K>& c, std::size_t idx, const K& coeff) {
  auto it = c.find(idx);
  if (it == c.end()) {
    if (!is_zero(coeff)) c.emplace(idx, coeff);
    return;
  }
  it->second = it->second + coeff;
  if (is_zero(it->second)) c.erase(it);
}

template <class K>
void add_scaled(LinComb<K>& acc, const LinComb<K>& c, const K& scale) {
  for (const auto& [idx, coeff] : c) add_term(acc, idx, scale * coeff);
}

}  // namespace detail

struct AxiomReport {
  bool identities_designated = true;
  bool d_identity_zero = true;
  bool d_squared_zero = true;
  bool leibniz = true;
  bool associative = true;
  bool identities_neutral = true;
  std::vector<std::string> mismatches;

  bool pass() const {
    return identities_designated && d_identity_zero && d_squared_zero &&
           leibniz && associative && identities_neutral;
  }
};

template <class K>
class DGCategory {
 public:
  struct Gen {
    std::string name;
    int degree;
  };

  explicit DGCategory(std::vector<std::string> object_names)
      : names_(std::move(object_names)),
        hom_(names_.size() * names_.size()),
        diff_(names_.size() * names_.size()),
        id_(names_.size(), kUnset) {
    if (names_.empty())
      throw std::invalid_argument("DGCategory: needs at least one object");
  }

  std::size_t num_objects() const { return names_.size(); }
  const std::string& object_name(std::size_t i) const { return names_.at(i); }

  const std::vector<Gen>& hom_basis(std::size_t i, std::size_t j) const {
    return hom_.at(pair_index(i, j));
  }

  std::size_t dim_hom(std::size_t i, std::size_t j, int degree) const {
    std::size_t d = 0;
    for (const Gen& g : hom_basis(i, j))
      if (g.degree == degree) ++d;
    return d;
  }

  std::size_t total_hom_dim() const {
    std::size_t d = 0;
    for (const auto& basis : hom_) d += basis.size();
    return d;
  }

  std::size_t identity_index(std::size_t i) const {
    if (id_.at(i) == kUnset)
      throw std::logic_error("DGCategory: identity not designated");
    return id_[i];
  }

  // --- construction API (used by the factories below) ---

  std::size_t add_generator(std::size_t i, std::size_t j, std::string name,
                            int degree) {
    auto& basis = hom_.at(pair_index(i, j));
    basis.push_back(Gen{std::move(name), degree});
    diff_.at(pair_index(i, j)).push_back(LinComb<K>{});
    return basis.size() - 1;
  }

  void set_identity(std::size_t i, std::size_t idx) {
    if (hom_basis(i, i).at(idx).degree != 0)
      throw std::invalid_argument("set_identity: identity must have degree 0");
    id_.at(i) = idx;
  }

  void set_differential(std::size_t i, std::size_t j, std::size_t f,
                        LinComb<K> value) {
    int deg = hom_basis(i, j).at(f).degree;
    for (const auto& [idx, coeff] : value)
      if (hom_basis(i, j).at(idx).degree != deg + 1)
        throw std::invalid_argument("set_differential: degree must rise by 1");
    diff_.at(pair_index(i, j)).at(f) = std::move(value);
  }

  // Records g∘f for f: E_i → E_j applied first, g: E_j → E_k second.
  void set_composition(std::size_t i, std::size_t j, std::size_t k,
                       std::size_t f, std::size_t g, LinComb<K> value) {
    int deg = hom_basis(i, j).at(f).degree + hom_basis(j, k).at(g).degree;
    for (const auto& [idx, coeff] : value)
      if (hom_basis(i, k).at(idx).degree != deg)
        throw std::invalid_argument("set_composition: degree mismatch");
    auto& grid = comp_[{i, j, k}];
    if (grid.empty())
      grid.assign(hom_basis(i, j).size(),
                  std::vector<LinComb<K>>(hom_basis(j, k).size()));
    grid.at(f).at(g) = std::move(value);
  }

  // --- structure maps ---

  const LinComb<K>& differential_basis(std::size_t i, std::size_t j,
                                       std::size_t f) const {
    return diff_.at(pair_index(i, j)).at(f);
  }

  LinComb<K> differential(std::size_t i, std::size_t j,
                          const LinComb<K>& c) const {
    LinComb<K> out;
    for (const auto& [idx, coeff] : c)
      detail::add_scaled(out, differential_basis(i, j, idx), coeff);
    return out;
  }

  const LinComb<K>& compose_basis(std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t f, std::size_t g) const {
    auto it = comp_.find({i, j, k});
    if (it == comp_.end())
      throw std::logic_error("compose_basis: composition table not set");
    return it->second.at(f).at(g);
  }

  // g∘f on linear combinations, f applied first.
  LinComb<K> compose(std::size_t i, std::size_t j, std::size_t k,
                     const LinComb<K>& f, const LinComb<K>& g) const {
    LinComb<K> out;
    for (const auto& [fi, fc] : f)
      for (const auto& [gi, gc] : g)
        detail::add_scaled(out, compose_basis(i, j, k, fi, gi), fc * gc);
    return out;
  }

  // --- axioms ---

  AxiomReport check_axioms() const {
    AxiomReport rep;
    auto note = [&](bool& flag, const std::string& what) {
      flag = false;
      rep.mismatches.push_back(what);
    };
    const std::size_t n = num_objects();
    for (std::size_t i = 0; i < n; ++i) {
      if (id_[i] == kUnset) {
        note(rep.identities_designated, "no identity on " + names_[i]);
        continue;
      }
      if (!differential_basis(i, i, id_[i]).empty())
        note(rep.d_identity_zero, "d(id) != 0 on " + names_[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto& basis = hom_basis(i, j);
        for (std::size_t f = 0; f < basis.size(); ++f) {
          if (!differential(i, j, differential_basis(i, j, f)).empty())
            note(rep.d_squared_zero,
                 "d^2 != 0 at " + names_[i] + "->" + names_[j] + " #" +
                     std::to_string(f));
          if (id_[i] != kUnset &&
              compose(i, i, j, identity_lincomb(i), unit_lincomb(f)) !=
                  unit_lincomb(f))
            note(rep.identities_neutral,
                 "f∘id != f at " + names_[i] + "->" + names_[j]);
          if (id_[j] != kUnset &&
              compose(i, j, j, unit_lincomb(f), identity_lincomb(j)) !=
                  unit_lincomb(f))
            note(rep.identities_neutral,
                 "id∘f != f at " + names_[i] + "->" + names_[j]);
        }
      }
    // Leibniz: d(g∘f) = d(g)∘f + (−1)^{deg g} g∘d(f), f applied first.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (hom_basis(i, j).empty()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (hom_basis(j, k).empty()) continue;
          for (std::size_t f = 0; f < hom_basis(i, j).size(); ++f)
            for (std::size_t g = 0; g < hom_basis(j, k).size(); ++g) {
              LinComb<K> lhs =
                  differential(i, k, compose_basis(i, j, k, f, g));
              LinComb<K> rhs = compose(i, j, k, unit_lincomb(f),
                                       differential_basis(j, k, g));
              K sign = (hom_basis(j, k)[g].degree % 2 != 0) ? K(-1) : K(1);
              detail::add_scaled(
                  rhs, compose(i, j, k, differential_basis(i, j, f),
                               unit_lincomb(g)),
                  sign);
              if (lhs != rhs)
                note(rep.leibniz, "Leibniz fails at " + names_[i] + "->" +
                                      names_[j] + "->" + names_[k]);
            }
        }
      }
    // Associativity: h∘(g∘f) = (h∘g)∘f on all basis triples.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (hom_basis(i, j).empty()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (hom_basis(j, k).empty()) continue;
          for (std::size_t l = 0; l < n; ++l) {
            if (hom_basis(k, l).empty()) continue;
            for (std::size_t f = 0; f < hom_basis(i, j).size(); ++f)
              for (std::size_t g = 0; g < hom_basis(j, k).size(); ++g)
                for (std::size_t h = 0; h < hom_basis(k, l).size(); ++h) {
                  LinComb<K> left =
                      compose(i, k, l, compose_basis(i, j, k, f, g),
                              unit_lincomb(h));
                  LinComb<K> right =
                      compose(i, j, l, unit_lincomb(f),
                              compose_basis(j, k, l, g, h));
                  if (left != right)
                    note(rep.associative,
                         "associativity fails at " + names_[i] + "->" +
                             names_[j] + "->" + names_[k] + "->" + names_[l]);
                }
          }
        }
      }
    return rep;
  }

  LinComb<K> identity_lincomb(std::size_t i) const {
    return LinComb<K>{{identity_index(i), K(1)}};
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  static LinComb<K> unit_lincomb(std::size_t idx) {
    return LinComb<K>{{idx, K(1)}};
  }

  std::size_t pair_index(std::size_t i, std::size_t j) const {
    if (i >= names_.size() || j >= names_.size())
      throw std::out_of_range("DGCategory: object index");
    return i * names_.size() + j;
  }

  std::vector<std::string> names_;
  std::vector<std::vector<Gen>> hom_;
  std::vector<std::vector<LinComb<K>>> diff_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
           std::vector<std::vector<LinComb<K>>>>
      comp_;
  std::vector<std::size_t> id_;
};

// ---------------------------------------------------------------------------
// Factories.

// The A-type directed category on p−1 objects L_1..L_{p−1}: one identity per
// object, one degree-1 arrow a_t: L_t → L_{t+1}, zero differential, and all
// arrow composites vanishing because hom(L_t, L_{t+2}) = 0.
template <class K>
DGCategory<K> directed_category(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("directed_category: need p >= 2");
  const std::size_t n = static_cast<std::size_t>(p - 1);
  std::vector<std::string> names;
  for (std::size_t t = 0; t < n; ++t)
    names.push_back("L" + std::to_string(t + 1));
  DGCategory<K> c(std::move(names));
  std::vector<std::size_t> ids(n), arrows(n > 0 ? n - 1 : 0);
  for (std::size_t t = 0; t < n; ++t) {
    ids[t] = c.add_generator(t, t, "id_L" + std::to_string(t + 1), 0);
    c.set_identity(t, ids[t]);
  }
  for (std::size_t t = 0; t + 1 < n; ++t)
    arrows[t] = c.add_generator(t, t + 1, "a" + std::to_string(t + 1), 1);
  for (std::size_t t = 0; t < n; ++t) {
    c.set_composition(t, t, t, ids[t], ids[t], {{ids[t], K(1)}});
    if (t + 1 < n) {
      c.set_composition(t, t, t + 1, ids[t], arrows[t], {{arrows[t], K(1)}});
      c.set_composition(t, t + 1, t + 1, arrows[t], ids[t + 1],
                        {{arrows[t], K(1)}});
      if (t + 2 < n)
        c.set_composition(t, t + 1, t + 2, arrows[t], arrows[t + 1], {});
    }
  }
  return c;
}

template <class K>
DGCategory<K> unit_category() {
  return directed_category<K>(2);
}

// Tensor product with the Koszul conventions from the header comment.
// Object (o1, o2) gets index o1·|C2| + o2; basis element f⊗v of a hom pair
// gets index f_idx·dim2 + v_idx, so orderings are first-factor-major.
template <class K>
DGCategory<K> tensor(const DGCategory<K>& c1, const DGCategory<K>& c2) {
  const std::size_t n1 = c1.num_objects(), n2 = c2.num_objects();
  std::vector<std::string> names;
  for (std::size_t o1 = 0; o1 < n1; ++o1)
    for (std::size_t o2 = 0; o2 < n2; ++o2)
      names.push_back("(" + c1.object_name(o1) + "," + c2.object_name(o2) +
                      ")");
  DGCategory<K> c(std::move(names));
  auto obj = [&](std::size_t o1, std::size_t o2) { return o1 * n2 + o2; };

  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          const auto& b1 = c1.hom_basis(i1, j1);
          const auto& b2 = c2.hom_basis(i2, j2);
          for (std::size_t f = 0; f < b1.size(); ++f)
            for (std::size_t v = 0; v < b2.size(); ++v)
              c.add_generator(obj(i1, i2), obj(j1, j2),
                              b1[f].name + "⊗" + b2[v].name,
                              b1[f].degree + b2[v].degree);
        }
  for (std::size_t o1 = 0; o1 < n1; ++o1)
    for (std::size_t o2 = 0; o2 < n2; ++o2) {
      std::size_t dim2 = c2.hom_basis(o2, o2).size();
      c.set_identity(obj(o1, o2), c1.identity_index(o1) * dim2 +
                                      c2.identity_index(o2));
    }

  // d(f⊗v) = (df)⊗v + (−1)^{deg f} f⊗(dv).
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          const auto& b1 = c1.hom_basis(i1, j1);
          const auto& b2 = c2.hom_basis(i2, j2);
          const std::size_t dim2 = b2.size();
          for (std::size_t f = 0; f < b1.size(); ++f)
            for (std::size_t v = 0; v < b2.size(); ++v) {
              LinComb<K> out;
              for (const auto& [fi, fc] : c1.differential_basis(i1, j1, f))
                detail::add_term(out, fi * dim2 + v, fc);
              K sign = (b1[f].degree % 2 != 0) ? K(-1) : K(1);
              for (const auto& [vi, vc] : c2.differential_basis(i2, j2, v))
                detail::add_term(out, f * dim2 + vi, sign * vc);
              c.set_differential(obj(i1, i2), obj(j1, j2), f * dim2 + v,
                                 std::move(out));
            }
        }

  // (ψ1⊗ψ2)∘(φ1⊗φ2) = (−1)^{deg ψ2 · deg φ1} (ψ1∘φ1)⊗(ψ2∘φ2),
  // with φ applied first.
  for (std::size_t i1 = 0; i1 < n1; ++i1)
    for (std::size_t i2 = 0; i2 < n2; ++i2)
      for (std::size_t j1 = 0; j1 < n1; ++j1)
        for (std::size_t j2 = 0; j2 < n2; ++j2) {
          const auto& p1 = c1.hom_basis(i1, j1);
          const auto& p2 = c2.hom_basis(i2, j2);
          if (p1.empty() || p2.empty()) continue;
          for (std::size_t k1 = 0; k1 < n1; ++k1)
            for (std::size_t k2 = 0; k2 < n2; ++k2) {
              const auto& q1 = c1.hom_basis(j1, k1);
              const auto& q2 = c2.hom_basis(j2, k2);
              if (q1.empty() || q2.empty()) continue;
              const std::size_t dim2_ik = c2.hom_basis(i2, k2).size();
              for (std::size_t f1 = 0; f1 < p1.size(); ++f1)
                for (std::size_t f2 = 0; f2 < p2.size(); ++f2)
                  for (std::size_t g1 = 0; g1 < q1.size(); ++g1)
                    for (std::size_t g2 = 0; g2 < q2.size(); ++g2) {
                      K sign = (q2[g2].degree * p1[f1].degree) % 2 != 0
                                   ? K(-1)
                                   : K(1);
                      LinComb<K> out;
                      const auto& r1 =
                          c1.compose_basis(i1, j1, k1, f1, g1);
                      const auto& r2 =
                          c2.compose_basis(i2, j2, k2, f2, g2);
                      for (const auto& [x1, cx1] : r1)
                        for (const auto& [x2, cx2] : r2)
                          detail::add_term(out, x1 * dim2_ik + x2,
                                           sign * cx1 * cx2);
                      c.set_composition(obj(i1, i2), obj(j1, j2),
                                        obj(k1, k2), f1 * p2.size() + f2,
                                        g1 * q2.size() + g2, std::move(out));
                    }
            }
        }
  return c;
}

// ---------------------------------------------------------------------------
// Euler matrices.

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Entry (i,j) = Σ_d (−1)^d dim hom^d(E_i, E_j), read off the graded basis.
template <class K>
IntMatrix euler_matrix(const DGCategory<K>& c) {
  const std::size_t n = c.num_objects();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& g : c.hom_basis(i, j))
        m[i][j] += (g.degree % 2 != 0) ? -1 : 1;
  return m;
}

// Same, with rows/columns listed in a caller-chosen object order.
template <class K>
IntMatrix euler_matrix(const DGCategory<K>& c,
                       const std::vector<std::size_t>& order) {
  IntMatrix base = euler_matrix(c);
  IntMatrix m(order.size(), std::vector<std::int64_t>(order.size(), 0));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      m[i][j] = base.at(order[i]).at(order[j]);
  return m;
}

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t ra = a.size(), ca = ra ? a[0].size() : 0;
  const std::size_t rb = b.size(), cb = rb ? b[0].size() : 0;
  IntMatrix m(ra * rb, std::vector<std::int64_t>(ca * cb, 0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l)
          m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return m;
}

inline Rational int_matrix_determinant(const IntMatrix& m) {
  Matrix<Rational> q(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      q.at(i, j) = Rational(m[i][j]);
  return determinant(q);
}

}  // namespace fermat
