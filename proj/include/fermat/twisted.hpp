#pragma once

// One-sided twisted complexes over a DG category, their shift and cone, and
// the hom complexes of the pretriangulated hull.
//
// A twisted complex is a finite list of terms (object, integer position) with
// twist components q_{st} ∈ hom^{pos_s − pos_t + 1}(E_s, E_t), subject to
//   * one-sidedness: q_{st} = 0 unless pos_s < pos_t, and
//   * Maurer–Cartan: d q_{st} + Σ_u q_{ut} ∘ q_{su} = 0 for every (s, t).
//
// A degree-k morphism f: (E, q) → (F, r) has components f_{st} ∈ hom^l with
// l + (pos_t − pos_s) = k, and the hom-complex differential is
//   D(f) = d(f) + R∘f − (−1)^k f∘Q.
// The sign on the last term is the one forced by D∘D = 0 together with the
// Maurer–Cartan equation; it is the only sign convention in this file.
//
// The shift K[n] moves every position down by n and multiplies the twist by
// (−1)^n; with that sign, cone(φ) = (K[1] ⊕ K', twist [[−q, 0], [φ, r]])
// satisfies Maurer–Cartan exactly when φ is closed of degree 0. Cones demand
// support on pos_s ≤ pos_t so that the result stays one-sided.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dgcat.hpp"
#include "linalg.hpp"

namespace fermat {

template <class K>
class TwistedComplex {
 public:
  TwistedComplex(DGCategory<K> cat, std::vector<std::size_t> objects,
                 std::vector<std::int64_t> positions,
                 std::map<std::pair<std::size_t, std::size_t>, LinComb<K>>
                     twist = {})
      : cat_(std::move(cat)),
        objects_(std::move(objects)),
        positions_(std::move(positions)),
        twist_(std::move(twist)) {
    if (objects_.size() != positions_.size())
      throw std::invalid_argument("TwistedComplex: size mismatch");
    for (std::size_t o : objects_)
      if (o >= cat_.num_objects())
        throw std::invalid_argument("TwistedComplex: bad object index");
    prune();
    validate();
  }

  const DGCategory<K>& category() const { return cat_; }
  std::size_t terms() const { return objects_.size(); }
  std::size_t object(std::size_t s) const { return objects_.at(s); }
  std::int64_t position(std::size_t s) const { return positions_.at(s); }
  const std::map<std::pair<std::size_t, std::size_t>, LinComb<K>>& twist()
      const {
    return twist_;
  }

  LinComb<K> twist_component(std::size_t s, std::size_t t) const {
    auto it = twist_.find({s, t});
    return it == twist_.end() ? LinComb<K>{} : it->second;
  }

  bool is_one_sided() const {
    for (const auto& [key, c] : twist_)
      if (!c.empty() && positions_[key.first] >= positions_[key.second])
        return false;
    return true;
  }

 private:
  void prune() {
    for (auto it = twist_.begin(); it != twist_.end();)
      it = it->second.empty() ? twist_.erase(it) : std::next(it);
  }

  void validate() const {
    for (const auto& [key, c] : twist_) {
      auto [s, t] = key;
      if (s >= terms() || t >= terms())
        throw std::invalid_argument("TwistedComplex: bad twist index");
      if (positions_[s] >= positions_[t])
        throw std::invalid_argument("TwistedComplex: twist not one-sided");
      int want =
          static_cast<int>(positions_[s] - positions_[t] + 1);
      for (const auto& [idx, coeff] : c)
        if (cat_.hom_basis(objects_[s], objects_[t]).at(idx).degree != want)
          throw std::invalid_argument("TwistedComplex: twist degree wrong");
    }
    // Maurer–Cartan: d q_{st} + Σ_u q_{ut} ∘ q_{su} = 0.
    for (std::size_t s = 0; s < terms(); ++s)
      for (std::size_t t = 0; t < terms(); ++t) {
        LinComb<K> acc =
            cat_.differential(objects_[s], objects_[t],
                              twist_component(s, t));
        for (std::size_t u = 0; u < terms(); ++u)
          detail::add_scaled(
              acc,
              cat_.compose(objects_[s], objects_[u], objects_[t],
                           twist_component(s, u), twist_component(u, t)),
              K(1));
        if (!acc.empty())
          throw std::invalid_argument(
              "TwistedComplex: Maurer-Cartan equation fails at (" +
              std::to_string(s) + "," + std::to_string(t) + ")");
      }
  }

  DGCategory<K> cat_;
  std::vector<std::size_t> objects_;
  std::vector<std::int64_t> positions_;
  std::map<std::pair<std::size_t, std::size_t>, LinComb<K>> twist_;
};

template <class K>
TwistedComplex<K> one_term_complex(const DGCategory<K>& cat, std::size_t obj,
                                   std::int64_t position = 0) {
  return TwistedComplex<K>(cat, {obj}, {position});
}

// K[n]: positions drop by n, twist picks up (−1)^n.
template <class K>
TwistedComplex<K> shift(const TwistedComplex<K>& k, std::int64_t n) {
  std::vector<std::size_t> objects;
  std::vector<std::int64_t> positions;
  for (std::size_t s = 0; s < k.terms(); ++s) {
    objects.push_back(k.object(s));
    positions.push_back(k.position(s) - n);
  }
  std::map<std::pair<std::size_t, std::size_t>, LinComb<K>> twist;
  K sign = (n % 2 != 0) ? K(-1) : K(1);
  for (const auto& [key, c] : k.twist()) {
    LinComb<K> scaled;
    detail::add_scaled(scaled, c, sign);
    twist[key] = std::move(scaled);
  }
  return TwistedComplex<K>(k.category(), std::move(objects),
                           std::move(positions), std::move(twist));
}

// ---------------------------------------------------------------------------
// Morphisms of twisted complexes.

template <class K>
struct PretrMorphism {
  std::int64_t total_degree = 0;
  // (source term, target term) → combination in hom(E_s, F_t); the internal
  // degree of every entry must be total_degree − (pos_t − pos_s).
  std::map<std::pair<std::size_t, std::size_t>, LinComb<K>> comps;

  bool is_zero() const {
    for (const auto& [key, c] : comps)
      if (!c.empty()) return false;
    return true;
  }
};

namespace detail {

template <class K>
void check_morphism_degrees(const TwistedComplex<K>& src,
                            const TwistedComplex<K>& tgt,
                            const PretrMorphism<K>& f) {
  for (const auto& [key, c] : f.comps) {
    auto [s, t] = key;
    int want = static_cast<int>(f.total_degree - tgt.position(t) +
                                src.position(s));
    for (const auto& [idx, coeff] : c)
      if (src.category()
              .hom_basis(src.object(s), tgt.object(t))
              .at(idx)
              .degree != want)
        throw std::invalid_argument("pretr morphism: component degree wrong");
  }
}

}  // namespace detail

// D(f) = d(f) + R∘f − (−1)^{|f|} f∘Q.
template <class K>
PretrMorphism<K> pretr_differential(const TwistedComplex<K>& src,
                                    const TwistedComplex<K>& tgt,
                                    const PretrMorphism<K>& f) {
  detail::check_morphism_degrees(src, tgt, f);
  const DGCategory<K>& cat = src.category();
  PretrMorphism<K> out{f.total_degree + 1, {}};
  K sign = (f.total_degree % 2 != 0) ? K(1) : K(-1);  // −(−1)^{|f|}
  auto& acc = out.comps;
  auto add = [&](std::size_t s, std::size_t t, const LinComb<K>& c,
                 const K& scale) {
    if (c.empty()) return;
    detail::add_scaled(acc[{s, t}], c, scale);
  };
  for (std::size_t s = 0; s < src.terms(); ++s)
    for (std::size_t t = 0; t < tgt.terms(); ++t) {
      // d(f_{st})
      auto it = f.comps.find({s, t});
      if (it != f.comps.end())
        add(s, t,
            cat.differential(src.object(s), tgt.object(t), it->second), K(1));
      // (R∘f)_{st} = Σ_u r_{ut} ∘ f_{su}
      for (std::size_t u = 0; u < tgt.terms(); ++u) {
        auto fu = f.comps.find({s, u});
        if (fu == f.comps.end()) continue;
        add(s, t,
            cat.compose(src.object(s), tgt.object(u), tgt.object(t),
                        fu->second, tgt.twist_component(u, t)),
            K(1));
      }
      // −(−1)^{|f|} (f∘Q)_{st} = −(−1)^{|f|} Σ_u f_{ut} ∘ q_{su}
      for (std::size_t u = 0; u < src.terms(); ++u) {
        auto fu = f.comps.find({u, t});
        if (fu == f.comps.end()) continue;
        add(s, t,
            cat.compose(src.object(s), src.object(u), tgt.object(t),
                        src.twist_component(s, u), fu->second),
            sign);
      }
    }
  for (auto it = acc.begin(); it != acc.end();)
    it = it->second.empty() ? acc.erase(it) : std::next(it);
  return out;
}

template <class K>
bool pretr_is_closed(const TwistedComplex<K>& src, const TwistedComplex<K>& tgt,
                     const PretrMorphism<K>& f) {
  return pretr_differential(src, tgt, f).is_zero();
}

// ---------------------------------------------------------------------------
// The hom complex between two twisted complexes.

struct PretrGen {
  std::size_t s, t, basis_idx;
};

template <class K>
std::vector<PretrGen> pretr_hom_basis(const TwistedComplex<K>& src,
                                      const TwistedComplex<K>& tgt,
                                      std::int64_t k) {
  std::vector<PretrGen> out;
  for (std::size_t s = 0; s < src.terms(); ++s)
    for (std::size_t t = 0; t < tgt.terms(); ++t) {
      const auto& basis =
          src.category().hom_basis(src.object(s), tgt.object(t));
      int want =
          static_cast<int>(k - tgt.position(t) + src.position(s));
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (basis[b].degree == want) out.push_back(PretrGen{s, t, b});
    }
  return out;
}

template <class K>
PretrMorphism<K> pretr_from_coords(const TwistedComplex<K>& src,
                                   const TwistedComplex<K>& tgt,
                                   std::int64_t k,
                                   const std::vector<K>& coords) {
  auto basis = pretr_hom_basis(src, tgt, k);
  if (coords.size() != basis.size())
    throw std::invalid_argument("pretr_from_coords: size mismatch");
  PretrMorphism<K> f{k, {}};
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!is_zero(coords[i]))
      detail::add_term(f.comps[{basis[i].s, basis[i].t}], basis[i].basis_idx,
                       coords[i]);
  return f;
}

// Matrix of D from total degree k to k+1, on the pretr_hom_basis orderings.
template <class K>
Matrix<K> pretr_differential_matrix(const TwistedComplex<K>& src,
                                    const TwistedComplex<K>& tgt,
                                    std::int64_t k) {
  auto dom = pretr_hom_basis(src, tgt, k);
  auto cod = pretr_hom_basis(src, tgt, k + 1);
  Matrix<K> m(cod.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    PretrMorphism<K> f{k, {}};
    f.comps[{dom[j].s, dom[j].t}] = LinComb<K>{{dom[j].basis_idx, K(1)}};
    PretrMorphism<K> df = pretr_differential(src, tgt, f);
    for (std::size_t i = 0; i < cod.size(); ++i) {
      auto it = df.comps.find({cod[i].s, cod[i].t});
      if (it == df.comps.end()) continue;
      auto ct = it->second.find(cod[i].basis_idx);
      if (ct != it->second.end()) m.at(i, j) = ct->second;
    }
  }
  return m;
}

template <class K>
std::int64_t pretr_cohomology_dim(const TwistedComplex<K>& src,
                                  const TwistedComplex<K>& tgt,
                                  std::int64_t k) {
  std::int64_t dim =
      static_cast<std::int64_t>(pretr_hom_basis(src, tgt, k).size());
  std::int64_t r_out = static_cast<std::int64_t>(
      rank(pretr_differential_matrix(src, tgt, k)));
  std::int64_t r_in = static_cast<std::int64_t>(
      rank(pretr_differential_matrix(src, tgt, k - 1)));
  return dim - r_out - r_in;
}

// Cohomology dimensions over every total degree with a nonzero hom space.
template <class K>
std::map<std::int64_t, std::int64_t> pretr_cohomology(
    const TwistedComplex<K>& src, const TwistedComplex<K>& tgt) {
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (std::size_t s = 0; s < src.terms(); ++s)
    for (std::size_t t = 0; t < tgt.terms(); ++t)
      for (const auto& g :
           src.category().hom_basis(src.object(s), tgt.object(t))) {
        std::int64_t k = g.degree + tgt.position(t) - src.position(s);
        lo = any ? std::min(lo, k) : k;
        hi = any ? std::max(hi, k) : k;
        any = true;
      }
  std::map<std::int64_t, std::int64_t> out;
  if (!any) return out;
  for (std::int64_t k = lo; k <= hi; ++k) {
    std::int64_t h = pretr_cohomology_dim(src, tgt, k);
    if (h != 0) out[k] = h;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cone.

// cone(φ: K → K') = K[1] ⊕ K' with twist [[−q, 0], [φ, r]]. Demands a closed
// degree-0 φ supported on pos_s ≤ pos_t; the K[1]-block positions then sit
// strictly left of the targets, keeping the cone one-sided.
template <class K>
TwistedComplex<K> cone(const TwistedComplex<K>& src,
                       const TwistedComplex<K>& tgt,
                       const PretrMorphism<K>& phi) {
  if (phi.total_degree != 0)
    throw std::invalid_argument("cone: morphism must have degree 0");
  for (const auto& [key, c] : phi.comps)
    if (!c.empty() && src.position(key.first) > tgt.position(key.second))
      throw std::invalid_argument(
          "cone: morphism component breaks the filtration (pos_s > pos_t)");
  if (!pretr_is_closed(src, tgt, phi))
    throw std::invalid_argument("cone: morphism is not closed");

  const std::size_t ns = src.terms();
  std::vector<std::size_t> objects;
  std::vector<std::int64_t> positions;
  for (std::size_t s = 0; s < ns; ++s) {
    objects.push_back(src.object(s));
    positions.push_back(src.position(s) - 1);
  }
  for (std::size_t t = 0; t < tgt.terms(); ++t) {
    objects.push_back(tgt.object(t));
    positions.push_back(tgt.position(t));
  }
  std::map<std::pair<std::size_t, std::size_t>, LinComb<K>> twist;
  for (const auto& [key, c] : src.twist()) {
    LinComb<K> neg;
    detail::add_scaled(neg, c, K(-1));
    twist[{key.first, key.second}] = std::move(neg);
  }
  for (const auto& [key, c] : tgt.twist())
    twist[{ns + key.first, ns + key.second}] = c;
  for (const auto& [key, c] : phi.comps)
    if (!c.empty()) twist[{key.first, ns + key.second}] = c;
  return TwistedComplex<K>(src.category(), std::move(objects),
                           std::move(positions), std::move(twist));
}

}  // namespace fermat
