#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fermat/gmod.hpp"

using namespace fermat;

namespace {
const std::vector<Weight> kWeights = {{2, 2, 2}, {3, 3, 3}, {2, 3, 6}};

GradeElement random_grade(std::mt19937_64& rng, const Weight& w, int lo,
                          int hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  return GradeElement(w, d(rng), d(rng), d(rng), 0);
}

// Random homogeneous element of the prescribed degree (possibly zero).
AlgebraElement<Rational> random_piece_element(std::mt19937_64& rng,
                                              const Weight& w,
                                              const GradeElement& deg) {
  std::uniform_int_distribution<long long> c(-3, 3);
  AlgebraElement<Rational> out(w);
  for (const Monomial& m : graded_piece_basis(w, deg))
    out = out + AlgebraElement<Rational>::monomial(w, Rational(c(rng)), m.ex,
                                                   m.ey, m.ez);
  return out;
}

ModuleMap<Rational> random_map(std::mt19937_64& rng, const FreeModule& src,
                               const FreeModule& tgt) {
  std::vector<AlgebraElement<Rational>> e;
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j)
      e.push_back(
          random_piece_element(rng, src.weight(), tgt.shift(i) - src.shift(j)));
  return ModuleMap<Rational>(src, tgt, std::move(e));
}
}  // namespace

TEST_CASE("free module dimensions and bases", "[gmod]") {
  Weight w{3, 3, 3};
  GradeElement c = GradeElement::cgen(w);
  FreeModule f(w, {GradeElement::zero(w), -GradeElement::xgen(w)});
  // Summand A(-x⃗) contributes A_{c-x⃗} in degree c.
  REQUIRE(f.dim_piece(c) == dim_graded_piece(w, c) +
                                dim_graded_piece(w, c - GradeElement::xgen(w)));
  auto basis = f.basis_piece(c);
  REQUIRE(basis.size() == static_cast<std::size_t>(f.dim_piece(c)));
  // Summand-major ordering.
  for (std::size_t i = 0; i + 1 < basis.size(); ++i)
    REQUIRE(basis[i].summand <= basis[i + 1].summand);
  REQUIRE(f.twist(c).dim_piece(GradeElement::zero(w)) == f.dim_piece(c));
}

TEST_CASE("module map rejects entries of the wrong degree", "[gmod]") {
  Weight w{3, 3, 3};
  FreeModule src(w, {-GradeElement::xgen(w)});
  FreeModule tgt = FreeModule::rank_one(w);
  auto x = AlgebraElement<Rational>::variable(w, 0);
  auto y = AlgebraElement<Rational>::variable(w, 1);
  REQUIRE_NOTHROW(ModuleMap<Rational>(src, tgt, {x}));
  REQUIRE_THROWS(ModuleMap<Rational>(src, tgt, {y}));
  REQUIRE_THROWS(ModuleMap<Rational>(src, tgt, {x + y}));
  // Zero entries are always fine.
  REQUIRE_NOTHROW(ModuleMap<Rational>::zero(src, tgt));
}

TEST_CASE("graded piece matrix is functorial", "[gmod]") {
  std::mt19937_64 rng(24601);
  for (const Weight& w : kWeights) {
    for (int trial = 0; trial < 10; ++trial) {
      FreeModule a(w, {random_grade(rng, w, -2, 0), random_grade(rng, w, -2, 0)});
      FreeModule b(w, {random_grade(rng, w, -1, 1), random_grade(rng, w, -1, 1),
                       random_grade(rng, w, -1, 1)});
      FreeModule c(w, {random_grade(rng, w, 0, 2)});
      auto f = random_map(rng, a, b);
      auto g = random_map(rng, b, c);
      auto gf = compose(g, f);
      REQUIRE(gf.source() == a);
      REQUIRE(gf.target() == c);
      for (int k = 0; k < 4; ++k) {
        GradeElement u = random_grade(rng, w, 0, 2);
        REQUIRE(graded_piece_matrix(gf, u) ==
                graded_piece_matrix(g, u) * graded_piece_matrix(f, u));
      }
    }
  }
}

TEST_CASE("identity map scalarizes to the identity matrix", "[gmod]") {
  Weight w{2, 3, 6};
  FreeModule f(w, {GradeElement::zero(w), -GradeElement::ygen(w)});
  auto id = ModuleMap<Rational>::identity(f);
  GradeElement u = GradeElement::cgen(w);
  auto m = graded_piece_matrix(id, u);
  REQUIRE(m == Matrix<Rational>::identity(
                   static_cast<std::size_t>(f.dim_piece(u))));
}

TEST_CASE("twisting commutes with scalarization", "[gmod]") {
  std::mt19937_64 rng(7);
  Weight w{3, 3, 3};
  FreeModule a(w, {random_grade(rng, w, -1, 1)});
  FreeModule b(w, {random_grade(rng, w, 0, 2), random_grade(rng, w, 0, 2)});
  auto f = random_map(rng, a, b);
  GradeElement n = -GradeElement::cgen(w);
  GradeElement u = GradeElement::cgen(w) + GradeElement::xgen(w);
  REQUIRE(graded_piece_matrix(f.twist(n), u) == graded_piece_matrix(f, u + n));
  REQUIRE(f.twist(n).source() == a.twist(n));
}

TEST_CASE("composition with identity and zero", "[gmod]") {
  std::mt19937_64 rng(99);
  Weight w{2, 4, 4};
  FreeModule a(w, {random_grade(rng, w, -1, 0), random_grade(rng, w, -1, 0)});
  FreeModule b(w, {random_grade(rng, w, 0, 1)});
  auto f = random_map(rng, a, b);
  REQUIRE(compose(ModuleMap<Rational>::identity(b), f) == f);
  REQUIRE(compose(f, ModuleMap<Rational>::identity(a)) == f);
  REQUIRE(compose(f, ModuleMap<Rational>::zero(a, a)).is_zero());
  REQUIRE_THROWS(compose(f, f));
}

TEST_CASE("constant term extraction", "[gmod]") {
  Weight w{3, 3, 3};
  auto x = AlgebraElement<Rational>::variable(w, 0);
  auto e = Rational(5) * AlgebraElement<Rational>::one(w) + x;
  REQUIRE(constant_term(e) == Rational(5));
  REQUIRE(constant_term(x) == Rational(0));
  REQUIRE(constant_term(AlgebraElement<Rational>(w)) == Rational(0));
}
