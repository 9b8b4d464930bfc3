#include <catch2/catch_amalgamated.hpp>

#include "fermat/dgcat.hpp"

using namespace fermat;

TEST_CASE("directed categories: structure", "[dgcat]") {
  auto c2 = directed_category<Rational>(2);
  REQUIRE(c2.num_objects() == 1);
  REQUIRE(c2.total_hom_dim() == 1);
  REQUIRE(c2.hom_basis(0, 0).size() == 1);
  REQUIRE(c2.hom_basis(0, 0)[0].degree == 0);

  auto c4 = directed_category<Rational>(4);
  REQUIRE(c4.num_objects() == 3);
  REQUIRE(c4.total_hom_dim() == 5);  // 3 identities + 2 arrows
  REQUIRE(c4.dim_hom(0, 1, 1) == 1);
  REQUIRE(c4.dim_hom(0, 2, 1) == 0);
  // a2∘a1 = 0: no room in hom(L1, L3).
  std::size_t a1 = 0, a2 = 0;  // each is the only generator of its hom
  REQUIRE(c4.compose_basis(0, 1, 2, a1, a2).empty());

  REQUIRE_THROWS_AS(directed_category<Rational>(1), std::invalid_argument);

  for (std::int64_t p : {2, 3, 5, 7}) {
    auto c = directed_category<Rational>(p);
    REQUIRE(c.total_hom_dim() == static_cast<std::size_t>(2 * p - 3));
    auto rep = c.check_axioms();
    REQUIRE(rep.pass());
  }
}

TEST_CASE("tensor with the unit category is the identity", "[dgcat]") {
  auto unit = unit_category<Rational>();
  auto c = directed_category<Rational>(4);
  // Basis index bookkeeping: with a one-generator factor, f⊗id and id⊗f both
  // keep index f, so tables can be compared entry by entry.
  for (bool left : {true, false}) {
    auto prod = left ? tensor(unit, c) : tensor(c, unit);
    REQUIRE(prod.num_objects() == c.num_objects());
    REQUIRE(prod.total_hom_dim() == c.total_hom_dim());
    for (std::size_t i = 0; i < c.num_objects(); ++i)
      for (std::size_t j = 0; j < c.num_objects(); ++j) {
        REQUIRE(prod.hom_basis(i, j).size() == c.hom_basis(i, j).size());
        for (std::size_t f = 0; f < c.hom_basis(i, j).size(); ++f)
          REQUIRE(prod.hom_basis(i, j)[f].degree ==
                  c.hom_basis(i, j)[f].degree);
      }
    for (std::size_t i = 0; i < c.num_objects(); ++i)
      for (std::size_t j = 0; j < c.num_objects(); ++j)
        for (std::size_t k = 0; k < c.num_objects(); ++k) {
          if (c.hom_basis(i, j).empty() || c.hom_basis(j, k).empty())
            continue;
          for (std::size_t f = 0; f < c.hom_basis(i, j).size(); ++f)
            for (std::size_t g = 0; g < c.hom_basis(j, k).size(); ++g)
              REQUIRE(prod.compose_basis(i, j, k, f, g) ==
                      c.compose_basis(i, j, k, f, g));
        }
    REQUIRE(prod.check_axioms().pass());
  }
}

TEST_CASE("tensor square of the 3-directed category", "[dgcat]") {
  auto d3 = directed_category<Rational>(3);
  auto t = tensor(d3, d3);
  REQUIRE(t.num_objects() == 4);
  REQUIRE(t.check_axioms().pass());

  // Objects: (L1,L1)=0, (L1,L2)=1, (L2,L1)=2, (L2,L2)=3.
  // hom((L1,L1),(L2,L2)) is spanned by a1⊗a1 alone, in degree 2.
  REQUIRE(t.hom_basis(0, 3).size() == 1);
  REQUIRE(t.hom_basis(0, 3)[0].degree == 2);

  // The two composition paths hit it with opposite Koszul signs:
  // through (L2,L1): (1⊗a)∘(a⊗1) = −a⊗a; through (L1,L2): (a⊗1)∘(1⊗a) = +a⊗a.
  std::size_t a_tensor_id = 0;  // hom((L1,L1),(L2,L1)) = {a1⊗id_L1}
  std::size_t id_tensor_a = 0;  // hom((L1,L1),(L1,L2)) = {id_L1⊗a1}
  auto through_21 = t.compose_basis(0, 2, 3, a_tensor_id, 0);
  auto through_12 = t.compose_basis(0, 1, 3, id_tensor_a, 0);
  REQUIRE(through_21 == LinComb<Rational>{{0, Rational(-1)}});
  REQUIRE(through_12 == LinComb<Rational>{{0, Rational(1)}});
}

TEST_CASE("tensor is associative under the canonical identification",
          "[dgcat]") {
  auto a = directed_category<Rational>(3);
  auto b = directed_category<Rational>(2);
  auto c = directed_category<Rational>(4);
  auto left = tensor(tensor(a, b), c);
  auto right = tensor(a, tensor(b, c));
  REQUIRE(left.num_objects() == right.num_objects());
  REQUIRE(left.total_hom_dim() == right.total_hom_dim());
  // Object and basis indices coincide because both sides order
  // first-factor-major; compare all composition tables.
  for (std::size_t i = 0; i < left.num_objects(); ++i)
    for (std::size_t j = 0; j < left.num_objects(); ++j) {
      REQUIRE(left.hom_basis(i, j).size() == right.hom_basis(i, j).size());
      for (std::size_t f = 0; f < left.hom_basis(i, j).size(); ++f)
        REQUIRE(left.hom_basis(i, j)[f].degree ==
                right.hom_basis(i, j)[f].degree);
      for (std::size_t k = 0; k < left.num_objects(); ++k) {
        if (left.hom_basis(i, j).empty() || left.hom_basis(j, k).empty())
          continue;
        for (std::size_t f = 0; f < left.hom_basis(i, j).size(); ++f)
          for (std::size_t g = 0; g < left.hom_basis(j, k).size(); ++g)
            REQUIRE(left.compose_basis(i, j, k, f, g) ==
                    right.compose_basis(i, j, k, f, g));
      }
    }
  REQUIRE(left.check_axioms().pass());
}

TEST_CASE("triple tensor products satisfy the axioms", "[dgcat]") {
  auto t = tensor(tensor(directed_category<Rational>(2),
                         directed_category<Rational>(3)),
                  directed_category<Rational>(6));
  REQUIRE(t.num_objects() == 10);
  REQUIRE(t.check_axioms().pass());
}

TEST_CASE("euler matrices", "[dgcat]") {
  auto unit = unit_category<Rational>();
  REQUIRE(euler_matrix(unit) == IntMatrix{{1}});

  for (std::int64_t p : {2, 3, 4, 6}) {
    auto c = directed_category<Rational>(p);
    IntMatrix e = euler_matrix(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j) {
        std::int64_t want = (i == j) ? 1 : (j == i + 1 ? -1 : 0);
        REQUIRE(e[i][j] == want);
      }
    REQUIRE(int_matrix_determinant(e) == Rational(1));
  }

  auto c1 = directed_category<Rational>(3);
  auto c2 = directed_category<Rational>(4);
  REQUIRE(euler_matrix(tensor(c1, c2)) ==
          kronecker(euler_matrix(c1), euler_matrix(c2)));
}

TEST_CASE("category construction is validated", "[dgcat]") {
  DGCategory<Rational> c({"E"});
  std::size_t id = c.add_generator(0, 0, "id", 0);
  std::size_t f = c.add_generator(0, 0, "f", 1);
  c.set_identity(0, id);
  REQUIRE_THROWS_AS(c.set_identity(0, f), std::invalid_argument);
  // Differential must raise degree by exactly one.
  REQUIRE_THROWS_AS(
      c.set_differential(0, 0, f, LinComb<Rational>{{id, Rational(1)}}),
      std::invalid_argument);
  c.set_differential(0, 0, id, LinComb<Rational>{{f, Rational(1)}});
  // d(id) != 0 must be caught by the axiom check.
  c.set_composition(0, 0, 0, id, id, {{id, Rational(1)}});
  c.set_composition(0, 0, 0, id, f, {{f, Rational(1)}});
  c.set_composition(0, 0, 0, f, id, {{f, Rational(1)}});
  c.set_composition(0, 0, 0, f, f, {});
  auto rep = c.check_axioms();
  REQUIRE_FALSE(rep.pass());
  REQUIRE_FALSE(rep.d_identity_zero);
}
