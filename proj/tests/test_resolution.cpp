#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fermat/resolution.hpp"

using namespace fermat;

namespace {
const std::vector<Weight> kWeights = {
    {2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}, {3, 4, 5}};
}

TEST_CASE("resolution stages have the pinned shifts", "[resolution]") {
  Weight w{3, 3, 3};
  auto cx = build_resolution<Rational>(w, GradeElement::zero(w), 4);
  const GradeElement x = GradeElement::xgen(w), y = GradeElement::ygen(w),
                     z = GradeElement::zgen(w), c = GradeElement::cgen(w);
  REQUIRE(cx.module(0).shifts() ==
          std::vector<GradeElement>{GradeElement::zero(w)});
  REQUIRE(cx.module(1).shifts() == std::vector<GradeElement>{-z, -y, -x});
  REQUIRE(cx.module(2).shifts() ==
          std::vector<GradeElement>{-y - z, -x - z, -x - y, -c});
  REQUIRE(cx.module(3).shifts() ==
          std::vector<GradeElement>{-x - y - z, -c - z, -c - y, -c - x});
  REQUIRE(cx.module(4).shifts() ==
          std::vector<GradeElement>{-c - y - z, -c - x - z, -c - x - y,
                                    -(2 * c)});
}

TEST_CASE("first differential is (z y x)", "[resolution]") {
  Weight w{2, 3, 6};
  auto cx = build_resolution<Rational>(w, GradeElement::zero(w), 1);
  const auto& d1 = cx.map(1);
  REQUIRE(d1.at(0, 0) == AlgebraElement<Rational>::variable(w, 2));
  REQUIRE(d1.at(0, 1) == AlgebraElement<Rational>::variable(w, 1));
  REQUIRE(d1.at(0, 2) == AlgebraElement<Rational>::variable(w, 0));
}

TEST_CASE("consecutive differentials compose to zero at depth",
          "[resolution]") {
  for (const Weight& w : kWeights) {
    auto cx = build_resolution<Rational>(w, GradeElement::zero(w), 12);
    REQUIRE(cx.is_complex());
    REQUIRE(cx.entries_in_maximal_ideal());
  }
}

TEST_CASE("tail is 2-periodic with a -c twist", "[resolution]") {
  for (const Weight& w : kWeights) {
    auto cx = build_resolution<Rational>(w, GradeElement::zero(w), 12);
    GradeElement mc = -GradeElement::cgen(w);
    for (std::size_t s = 3; s + 2 <= 12; ++s) {
      REQUIRE(cx.module(s + 2) == cx.module(s).twist(mc));
      REQUIRE(cx.map(s + 2) == cx.map(s).twist(mc));
    }
  }
}

TEST_CASE("resolution is exact above zero and resolves the simple module",
          "[resolution]") {
  std::mt19937_64 rng(112233);
  std::uniform_int_distribution<std::int64_t> d(-2, 2);
  for (const Weight& w : kWeights) {
    for (GradeElement n :
         {GradeElement::zero(w), GradeElement(w, d(rng), d(rng), d(rng), 0)}) {
      auto cx = build_resolution<Rational>(w, n, 6);
      // The simple module sits in internal degree -n; exactness is checked on
      // a window around it.
      Rational mid = (-n).phi();
      for (const GradeElement& u :
           enumerate_window(w, mid - w.p2 - 1, mid + w.p2 + 1)) {
        for (std::size_t i = 1; i <= 5; ++i)
          REQUIRE(cx.homology_dim(i, u) == 0);
        REQUIRE(cx.homology_dim(0, u) == (u == -n ? 1 : 0));
      }
    }
  }
}

TEST_CASE("matrix factorization identity with recorded signs",
          "[resolution]") {
  for (const Weight& w : kWeights) {
    auto rep = check_matrix_factorization(w);
    REQUIRE(rep.ok());
    for (int s : rep.d3d4_signs) REQUIRE(s == 1);
    for (int s : rep.d4d3_signs) REQUIRE(s == 1);
    REQUIRE(rep.d3d4_off_diagonal_zero);
    REQUIRE(rep.d4d3_off_diagonal_zero);
  }
}

TEST_CASE("koszul complexes certify the variable quotients as perfect",
          "[resolution]") {
  std::mt19937_64 rng(654);
  std::uniform_int_distribution<std::int64_t> d(-2, 2);
  const std::vector<std::vector<int>> subsets = {{0},    {1},    {2},
                                                 {0, 1}, {0, 2}, {1, 2}};
  for (const Weight& w : kWeights) {
    for (const auto& vars : subsets) {
      auto cert =
          koszul_resolution<Rational>(w, vars, GradeElement::zero(w), 2);
      REQUIRE(cert.differentials_compose_to_zero);
      REQUIRE(cert.exact_above_zero);
      REQUIRE(cert.quotient_dims_match);
      REQUIRE(cert.ok());
    }
    // A twisted instance of the two-variable case.
    GradeElement n(w, d(rng), d(rng), d(rng), 0);
    auto cert = koszul_resolution<Rational>(w, {0, 1}, n, 2);
    REQUIRE(cert.ok());
    REQUIRE_FALSE(cert.module_description.empty());
  }
}

TEST_CASE("koszul variable subsets are validated", "[resolution]") {
  Weight w{3, 3, 3};
  GradeElement n = GradeElement::zero(w);
  REQUIRE_THROWS(koszul_complex<Rational>(w, {}, n));
  REQUIRE_THROWS(koszul_complex<Rational>(w, {0, 1, 2}, n));
  REQUIRE_THROWS(koszul_complex<Rational>(w, {1, 1}, n));
  REQUIRE_THROWS(koszul_complex<Rational>(w, {3}, n));
  REQUIRE_NOTHROW(koszul_complex<Rational>(w, {2, 0}, n));
}

TEST_CASE("resolution requires at least one stage", "[resolution]") {
  Weight w{3, 3, 3};
  REQUIRE_THROWS(build_resolution<Rational>(w, GradeElement::zero(w), 0));
}
