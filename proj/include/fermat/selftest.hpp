#pragma once

// The acceptance suite: eleven mechanically checkable criteria covering the
// resolution engine, the orthogonality tables, the collection verifier, the
// tensor-category comparison, K-theory reduction, and the pretriangulated
// machinery. Shared between the standalone acceptance binary and the CLI's
// `selftest` subcommand. All checks run over exact rationals with fixed
// random seeds, so results are reproducible bit for bit.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collection.hpp"
#include "twisted.hpp"

namespace fermat {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline const std::vector<Weight>& default_weights() {
  static const std::vector<Weight> w = {
      {2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}, {3, 4, 5}};
  return w;
}

namespace selftest_detail {

using TC = TwistedComplex<Rational>;
using PM = PretrMorphism<Rational>;

inline std::vector<PretrGen> diagonal_basis(const TC& src, const TC& tgt) {
  std::vector<PretrGen> out;
  for (const PretrGen& g : pretr_hom_basis(src, tgt, 0))
    if (src.position(g.s) == tgt.position(g.t)) out.push_back(g);
  return out;
}

inline PM random_closed_diagonal(std::mt19937_64& rng, const TC& src,
                                 const TC& tgt) {
  auto dom = diagonal_basis(src, tgt);
  if (dom.empty()) return PM{0, {}};
  auto cod = pretr_hom_basis(src, tgt, 1);
  Matrix<Rational> d(cod.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    PM f{0, {}};
    f.comps[{dom[j].s, dom[j].t}] =
        LinComb<Rational>{{dom[j].basis_idx, Rational(1)}};
    PM df = pretr_differential(src, tgt, f);
    for (std::size_t i = 0; i < cod.size(); ++i) {
      auto it = df.comps.find({cod[i].s, cod[i].t});
      if (it == df.comps.end()) continue;
      auto ct = it->second.find(cod[i].basis_idx);
      if (ct != it->second.end()) d.at(i, j) = ct->second;
    }
  }
  auto null_basis = nullspace(d);
  if (null_basis.empty()) return PM{0, {}};
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<Rational> coords(dom.size(), Rational(0));
  for (const auto& v : null_basis) {
    Rational c(coeff(rng));
    for (std::size_t i = 0; i < dom.size(); ++i)
      coords[i] = coords[i] + c * v[i];
  }
  PM f{0, {}};
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (!is_zero(coords[i]))
      detail::add_term(f.comps[{dom[i].s, dom[i].t}], dom[i].basis_idx,
                       coords[i]);
  return f;
}

inline PM random_morphism(std::mt19937_64& rng, const TC& src, const TC& tgt,
                          std::int64_t k) {
  auto basis = pretr_hom_basis(src, tgt, k);
  std::uniform_int_distribution<int> coeff(-2, 2);
  PM f{k, {}};
  for (const PretrGen& g : basis) {
    Rational c(coeff(rng));
    if (!is_zero(c)) detail::add_term(f.comps[{g.s, g.t}], g.basis_idx, c);
  }
  return f;
}

template <class F>
CriterionResult timed(int number, const std::string& name, F&& body) {
  CriterionResult r;
  r.number = number;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    r.pass = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace selftest_detail

// 1. Differentials compose to zero through stage 12, entries stay in the
//    maximal ideal, and each weight finishes within its time budget.
inline CriterionResult criterion_differentials(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      1, "resolution-differentials-square-to-zero",
      [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto start = std::chrono::steady_clock::now();
          auto cx = build_resolution<Rational>(w, GradeElement::zero(w), 12);
          bool good = cx.is_complex() && cx.entries_in_maximal_ideal();
          double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
          if (!good) detail << w.str() << ": d*d != 0; ";
          if (secs > 5.0) {
            detail << w.str() << ": over 5s budget; ";
            good = false;
          }
          ok = ok && good;
        }
        if (ok)
          detail << weights.size() << " weight(s), 12 stages, <5s each";
        return ok;
      });
}

// 2. Degreewise exactness of the truncated resolution of k on the internal
//    window 0 ≤ φ(u⃗) ≤ 3·p2, with H_0 = k exactly at u⃗ = 0.
inline CriterionResult criterion_exactness(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      2, "resolution-truncated-exactness",
      [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto start = std::chrono::steady_clock::now();
          const std::size_t stages = 8;
          auto cx =
              build_resolution<Rational>(w, GradeElement::zero(w), stages);
          std::size_t checked = 0;
          bool good = true;
          for (const GradeElement& u :
               enumerate_window(w, Rational(0), Rational(3) * w.p2)) {
            for (std::size_t i = 1; i < stages && good; ++i)
              if (cx.homology_dim(i, u) != 0) {
                detail << w.str() << ": H_" << i << "(" << u.str()
                       << ") != 0; ";
                good = false;
              }
            std::int64_t h0 = u == GradeElement::zero(w) ? 1 : 0;
            if (good && cx.homology_dim(0, u) != h0) {
              detail << w.str() << ": H_0(" << u.str() << ") wrong; ";
              good = false;
            }
            ++checked;
          }
          double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
          if (secs > 60.0) {
            detail << w.str() << ": over 60s budget; ";
            good = false;
          }
          ok = ok && good;
          if (ok && &w == &weights.back())
            detail << "windows of " << checked << " degrees, positions 1.."
                   << stages - 1;
        }
        return ok;
      });
}

// 3. The stable tail is a matrix factorization: d3∘d4 = d4∘d3 = f·Id with
//    every recorded diagonal sign +1.
inline CriterionResult criterion_matrix_factorization(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      3, "matrix-factorization-identity",
      [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto rep = check_matrix_factorization(w);
          bool good = rep.ok();
          for (int s : rep.d3d4_signs) good = good && s == 1;
          for (int s : rep.d4d3_signs) good = good && s == 1;
          if (!good) detail << w.str() << ": factorization failed; ";
          ok = ok && good;
        }
        if (ok) detail << "d3*d4 = d4*d3 = f*Id, all signs +1";
        return ok;
      });
}

// 4. The four-case concentration pattern for RHom(k(m⃗), k(n⃗)) over the full
//    index-set square, through cohomological degree 12.
inline CriterionResult criterion_rhom_pattern(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      4, "rhom-four-case-pattern", [&](std::ostringstream& detail) {
        bool ok = true;
        std::size_t pairs = 0;
        for (const Weight& w : weights) {
          IndexSet box = index_set(w);
          auto verdict = verify_rhom_pattern(w, box.elements, 12);
          if (!verdict.pass) {
            detail << w.str() << ": " << verdict.mismatches.front() << "; ";
            ok = false;
          }
          pairs += box.size() * box.size();
        }
        if (ok) detail << pairs << " pairs, degrees 0..12";
        return ok;
      });
}

// 5. The simples over the index set form an exceptional collection of the
//    expected size (p0−1)(p1−1)(p2−1).
inline CriterionResult criterion_exceptional(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      5, "exceptional-collection", [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto rep = verify_exceptional(w);
          std::size_t expected = static_cast<std::size_t>(
              (w.p0 - 1) * (w.p1 - 1) * (w.p2 - 1));
          bool good = rep.pass() && rep.object_count == expected;
          if (!good)
            detail << w.str() << ": "
                   << (rep.mismatches.empty() ? "wrong count"
                                              : rep.mismatches.front())
                   << "; ";
          ok = ok && good;
          detail << w.str() << ":" << rep.object_count << " ";
        }
        return ok;
      });
}

// 6. Gorenstein socle: RHom(k, A) is one-dimensional, concentrated in
//    cohomological degree 2 at internal degree c⃗−x⃗−y⃗−z⃗, vanishing through
//    degree 12; and the slope of x⃗+y⃗+z⃗−c⃗ is zero exactly for weights with
//    1/p0 + 1/p1 + 1/p2 = 1.
inline CriterionResult criterion_gorenstein(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      6, "gorenstein-socle-concentration", [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto rep = rhom_into_free<Rational>(w, GradeElement::zero(w),
                                              GradeElement::zero(w), 12, 3);
          GradeElement socle = GradeElement::cgen(w) - GradeElement::xgen(w) -
                               GradeElement::ygen(w) - GradeElement::zgen(w);
          bool good = rep.total_dim(0) == 0 && rep.total_dim(1) == 0 &&
                      rep.total_dim(2) == 1 &&
                      rep.dims_by_stage[2].count(socle) == 1 &&
                      rep.dims_by_stage[2].at(socle) == 1;
          for (std::size_t s = 3; s <= 12; ++s)
            good = good && rep.total_dim(s) == 0;
          bool elliptic_expected =
              Rational(1, w.p0) + Rational(1, w.p1) + Rational(1, w.p2) ==
              Rational(1);
          bool phi_zero = (-socle).phi() == Rational(0);
          if (phi_zero != elliptic_expected) good = false;
          if (!good) detail << w.str() << ": concentration failed; ";
          ok = ok && good;
          detail << w.str() << (phi_zero ? ":slope0 " : ":slope!=0 ");
        }
        return ok;
      });
}

// 7. The Yoneda category of the collection is isomorphic, including Koszul
//    signs, to the triple tensor of directed quiver categories, with every
//    aligning scaling equal to ±1.
inline CriterionResult criterion_comparison(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      7, "comparison-isomorphism", [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto rep = comparison_isomorphism<Rational>(w);
          bool good = rep.pass() && rep.all_scalings_pm_one;
          if (!good)
            detail << w.str() << ": "
                   << (rep.mismatches.empty() ? "scaling not unit"
                                              : rep.mismatches.front())
                   << "; ";
          ok = ok && good;
        }
        if (ok)
          detail << weights.size()
                 << " weight(s), composition tables match, scalings in {1,-1}";
        return ok;
      });
}

// 8. The Euler Gram matrix on the index set equals the tensor category's
//    Euler matrix under the object dictionary, factors as the Kronecker cube
//    of unipotent bidiagonal matrices, and has determinant 1.
inline CriterionResult criterion_gram(const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      8, "gram-kronecker-factorization", [&](std::ostringstream& detail) {
        bool ok = true;
        for (const Weight& w : weights) {
          auto rep = kronecker_check(w);
          if (!rep.pass()) {
            detail << w.str() << ": gram mismatch; ";
            ok = false;
          }
        }
        if (ok) detail << "gram = E(p0) x E(p1) x E(p2), det 1";
        return ok;
      });
}

// 9. K-theory reduction: 50 fixed-seed twists per weight reduce onto the
//    index set, and the Euler pairing computed directly agrees with the
//    pairing computed through the reduction and its perfect traces.
inline CriterionResult criterion_reduction(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      9, "k-theory-reduction-pairing", [&](std::ostringstream& detail) {
        std::mt19937_64 rng(900913);
        bool ok = true;
        std::size_t checked = 0;
        for (const Weight& w : weights) {
          std::uniform_int_distribution<std::int64_t> da(-w.p0, w.p0),
              db(-w.p1, w.p1), dc(-w.p2, w.p2), dm(-2, 2);
          for (int trial = 0; trial < 50 && ok; ++trial) {
            GradeElement m(w, da(rng), db(rng), dc(rng), dm(rng));
            PairingCheck chk = verify_reduction_pairing(w, m);
            if (!chk.pass) {
              detail << w.str() << ": pairing mismatch at " << m.str()
                     << "; ";
              ok = false;
            }
            ++checked;
          }
        }
        if (ok) detail << checked << " twists, pairings consistent";
        return ok;
      });
}

// 10. DG axioms for every constructed category; Pre-Tr differentials square
//     to zero and cones of random closed morphisms stay one-sided and
//     Maurer–Cartan, across at least 200 randomized instances; the cone of
//     an identity is contractible.
inline CriterionResult criterion_pretriangulated(
    const std::vector<Weight>& weights) {
  using namespace selftest_detail;
  return selftest_detail::timed(
      10, "dg-axioms-and-pretriangulated-structure",
      [&](std::ostringstream& detail) {
        bool ok = true;
        std::size_t categories = 0;
        for (const Weight& w : weights) {
          auto d0 = directed_category<Rational>(w.p0);
          auto d1 = directed_category<Rational>(w.p1);
          auto d2 = directed_category<Rational>(w.p2);
          auto pair01 = tensor(d0, d1);
          auto triple = tensor(pair01, d2);
          for (const auto* c : {&d0, &d1, &d2, &pair01, &triple}) {
            if (!c->check_axioms().pass()) {
              detail << w.str() << ": axiom failure; ";
              ok = false;
            }
            ++categories;
          }
        }

        // Contractibility of identity cones.
        for (std::int64_t p : {2, 3}) {
          auto cat = directed_category<Rational>(p);
          for (std::size_t obj = 0; obj + 1 < static_cast<std::size_t>(p);
               ++obj) {
            TC k = one_term_complex(cat, obj, 0);
            PM id{0, {{{0, 0}, cat.identity_lincomb(obj)}}};
            TC c = cone(k, k, id);
            if (!pretr_cohomology(c, c).empty() ||
                !pretr_cohomology(c, k).empty() ||
                !pretr_cohomology(k, c).empty()) {
              detail << "cone(id) not contractible (p=" << p << "); ";
              ok = false;
            }
          }
        }

        // Randomized Pre-Tr instances over two base categories.
        std::mt19937_64 rng(555666);
        std::size_t instances = 0;
        auto cat_a = directed_category<Rational>(4);
        auto cat_b = tensor(directed_category<Rational>(2),
                            directed_category<Rational>(3));
        for (const auto* cat : {&cat_a, &cat_b}) {
          std::vector<TC> pool;
          std::uniform_int_distribution<std::size_t> obj(
              0, cat->num_objects() - 1);
          std::uniform_int_distribution<std::int64_t> pos(-1, 1);
          std::uniform_int_distribution<int> action(0, 3);
          pool.push_back(one_term_complex(*cat, obj(rng), pos(rng)));
          while (pool.size() < 14) {
            std::uniform_int_distribution<std::size_t> pick(0,
                                                            pool.size() - 1);
            int a = action(rng);
            if (a == 0 || pool.size() < 2) {
              pool.push_back(one_term_complex(*cat, obj(rng), pos(rng)));
            } else if (a == 1) {
              pool.push_back(shift(pool[pick(rng)], pos(rng)));
            } else {
              const TC& src = pool[pick(rng)];
              const TC& tgt = pool[pick(rng)];
              if (src.terms() + tgt.terms() > 5) continue;
              // The constructor revalidates one-sidedness and the
              // Maurer–Cartan equation; surviving it is the check.
              TC c = cone(src, tgt, random_closed_diagonal(rng, src, tgt));
              if (!c.is_one_sided()) {
                detail << "cone lost one-sidedness; ";
                ok = false;
              }
              pool.push_back(std::move(c));
              ++instances;
            }
          }
          std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
          std::uniform_int_distribution<std::int64_t> deg(-2, 3);
          for (int trial = 0; trial < 100; ++trial) {
            const TC& src = pool[pick(rng)];
            const TC& tgt = pool[pick(rng)];
            PM f = random_morphism(rng, src, tgt, deg(rng));
            PM df = pretr_differential(src, tgt, f);
            PM ddf = pretr_differential(src, tgt, df);
            if (!ddf.is_zero()) {
              detail << "Pre-Tr differential does not square to zero; ";
              ok = false;
            }
            ++instances;
          }
        }
        if (instances < 200) {
          detail << "only " << instances << " randomized instances; ";
          ok = false;
        }
        if (ok)
          detail << categories << " categories, " << instances
                 << " randomized instances";
        return ok;
      });
}

// 11. The combinatorial Ext dimensions agree with cohomology of the hom
//     complex of the actual resolution, over the index-set square and 100
//     random pairs per weight.
inline CriterionResult criterion_ext_vs_hom_complex(
    const std::vector<Weight>& weights) {
  return selftest_detail::timed(
      11, "ext-vs-hom-complex", [&](std::ostringstream& detail) {
        std::mt19937_64 rng(777001);
        bool ok = true;
        std::size_t checked = 0;
        for (const Weight& w : weights) {
          IndexSet box = index_set(w);
          for (const GradeElement& m : box.elements)
            for (const GradeElement& n : box.elements)
              for (std::size_t d = 0; d <= 4 && ok; ++d) {
                if (ext_dim(w, m, n, d) !=
                    ext_dim_via_hom_complex<Rational>(w, m, n, d)) {
                  detail << w.str() << ": mismatch at (" << m.str() << ", "
                         << n.str() << ", " << d << "); ";
                  ok = false;
                }
                ++checked;
              }
          std::uniform_int_distribution<std::int64_t> da(-w.p0, w.p0),
              db(-w.p1, w.p1), dc(-w.p2, w.p2), dm(-2, 2);
          std::uniform_int_distribution<std::size_t> deg(0, 5);
          for (int trial = 0; trial < 100 && ok; ++trial) {
            GradeElement m(w, da(rng), db(rng), dc(rng), dm(rng));
            GradeElement n(w, da(rng), db(rng), dc(rng), dm(rng));
            std::size_t d = deg(rng);
            PivotOrder order = trial % 2 == 0 ? PivotOrder::LeftToRight
                                              : PivotOrder::RightToLeft;
            if (ext_dim(w, m, n, d) !=
                ext_dim_via_hom_complex<Rational>(w, m, n, d, order)) {
              detail << w.str() << ": random mismatch at (" << m.str()
                     << ", " << n.str() << ", " << d << "); ";
              ok = false;
            }
            ++checked;
          }
        }
        if (ok) detail << checked << " comparisons";
        return ok;
      });
}

inline std::vector<CriterionResult> run_acceptance(
    const std::vector<Weight>& weights = default_weights()) {
  return {criterion_differentials(weights),
          criterion_exactness(weights),
          criterion_matrix_factorization(weights),
          criterion_rhom_pattern(weights),
          criterion_exceptional(weights),
          criterion_gorenstein(weights),
          criterion_comparison(weights),
          criterion_gram(weights),
          criterion_reduction(weights),
          criterion_pretriangulated(weights),
          criterion_ext_vs_hom_complex(weights)};
}

inline bool report_acceptance(std::ostream& out,
                              const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const CriterionResult& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.number
        << ". " << r.name << ": " << r.detail << " (" << std::fixed
        << std::setprecision(2) << r.seconds << "s)\n";
    all = all && r.pass;
  }
  out << (all ? "all criteria passed\n" : "criteria failed\n");
  return all;
}

}  // namespace fermat
