#include <catch2/catch_amalgamated.hpp>

#include "fermat/rational.hpp"

using namespace fermat;

TEST_CASE("rational arithmetic is exact", "[scalar]") {
  Rational a(1, 3), b(1, 6);
  REQUIRE(a + b == Rational(1, 2));
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  Rational big = Rational(1);
  for (int i = 0; i < 64; ++i) big *= Rational(10);
  REQUIRE(big / big == Rational(1));
  REQUIRE(is_zero(a - a));
  REQUIRE_FALSE(is_zero(a));
}

TEST_CASE("primality test agrees with known values", "[scalar]") {
  REQUIRE_FALSE(is_prime_u64(0));
  REQUIRE_FALSE(is_prime_u64(1));
  REQUIRE(is_prime_u64(2));
  REQUIRE(is_prime_u64(3));
  REQUIRE_FALSE(is_prime_u64(4));
  REQUIRE_FALSE(is_prime_u64(561));  // Carmichael number
  REQUIRE(is_prime_u64(1000003));
  REQUIRE(is_prime_u64(1000000007));
  REQUIRE_FALSE(is_prime_u64(1000000007ULL * 3));
  REQUIRE(is_prime_u64((1ULL << 61) - 1));  // Mersenne prime
  REQUIRE_FALSE(is_prime_u64((1ULL << 61) - 3));
}

TEST_CASE("prime field arithmetic", "[scalar]") {
  Fp::set_modulus(7);
  REQUIRE(Fp(3) + Fp(5) == Fp(1));
  REQUIRE(Fp(3) - Fp(5) == Fp(5));
  REQUIRE(Fp(3) * Fp(5) == Fp(1));
  REQUIRE(Fp(-1) == Fp(6));
  REQUIRE(-Fp(2) == Fp(5));
  REQUIRE(Fp(3) / Fp(5) == Fp(3) * Fp(5).inverse());

  Fp::set_modulus(101);
  for (long long v = 1; v < 101; ++v)
    REQUIRE(Fp(v) * Fp(v).inverse() == Fp(1));

  // Reduction from arbitrary-precision integers, including negatives.
  Fp::set_modulus(13);
  Integer n("-123456789123456789123456789");
  long long r = 0;
  {
    Integer m = n % 13;
    if (m < 0) m += 13;
    r = static_cast<long long>(m);
  }
  REQUIRE(Fp(n) == Fp(r));
}

TEST_CASE("prime field rejects composite modulus", "[scalar]") {
  REQUIRE_THROWS(Fp::set_modulus(6));
  REQUIRE_THROWS(Fp::set_modulus(1));
  Fp::set_modulus(5);  // leave a valid modulus behind
}

TEST_CASE("field traits report name and characteristic", "[scalar]") {
  REQUIRE(field_info<Rational>::characteristic() == 0);
  REQUIRE(field_info<Rational>::name() == "QQ");
  Fp::set_modulus(31);
  REQUIRE(field_info<Fp>::characteristic() == 31);
  REQUIRE(field_info<Fp>::name() == "F_31");
}
