#include "maxab/errors.hpp"
#include "maxab/residues.hpp"

#include <doctest.h>

#include <random>

using namespace maxab;

namespace {

i64 brute_inverse(i64 a, i64 M) {
  for (i64 x = 1; x < M; ++x)
    if (mod_floor(a * x, M) == 1 % M) return x;
  return -1;
}

// Squarefree part by testing every divisor square.
i64 brute_squarefree(i64 n) {
  i64 m = n < 0 ? -n : n;
  i64 best = 1;
  for (i64 k = 1; k * k <= m; ++k)
    if (m % (k * k) == 0) best = k;
  return n / (best * best);
}

}  // namespace

TEST_SUITE("residues") {
  TEST_CASE("inverse of 4 mod 49") {
    CHECK(inv_mod(ModInt(4, 49)).value() == 37);
    CHECK(brute_inverse(4, 49) == 37);
  }

  TEST_CASE("inverse agrees with search for every unit") {
    for (i64 M : {2, 8, 9, 16, 25, 27, 49, 64}) {
      for (i64 a = 0; a < M; ++a) {
        if (gcd64(a, M) == 1) {
          CHECK(inv_mod(ModInt(a, M)).value() == brute_inverse(a, M));
        } else {
          CHECK_THROWS_AS(inv_mod(ModInt(a, M)), Error);
        }
      }
    }
  }

  TEST_CASE("ModInt arithmetic reduces into range") {
    ModInt x(-3, 7);
    CHECK(x.value() == 4);
    CHECK((x + ModInt(5, 7)).value() == 2);
    CHECK((x * ModInt(2, 7)).value() == 1);
    CHECK((-x).value() == 3);
    CHECK(mod_floor(-15, 8) == 1);
  }

  TEST_CASE("rational residues") {
    CHECK(rational_residue(-7, 4, 49).value() == 35);
    CHECK(rational_residue(-3, 4, 3).value() == 0);
    CHECK(rational_residue(-12, 4, 8).value() == 5);
    CHECK(rational_residue(Rational(-7, 4), 5).value() == 2);
    CHECK_THROWS_AS(rational_residue(1, 2, 8), Error);
    CHECK_THROWS_AS(rational_residue(1, 0, 8), Error);
  }

  TEST_CASE("rational residue times denominator recovers numerator") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> num(-500, 500), den(1, 60);
    for (int trial = 0; trial < 400; ++trial) {
      const i64 a = num(rng), b = den(rng);
      for (i64 M : {9, 25, 49, 125}) {
        if (gcd64(b, M) != 1) continue;
        const ModInt r = rational_residue(a, b, M);
        CHECK((r * ModInt(b, M)).value() == mod_floor(a, M));
      }
    }
  }

  TEST_CASE("squarefree and power-free parts") {
    CHECK(squarefree_part(i64{-24}) == -6);
    CHECK(squarefree_part(i64{9}) == 1);
    CHECK(squarefree_part(i64{360}) == 10);
    CHECK_THROWS_AS(squarefree_part(i64{0}), Error);
    CHECK(power_free_part(i64{320}, 6) == 5);
    CHECK(power_free_part(i64{-16}, 4) == -1);
    CHECK(power_free_part(i64{-24}, 6) == -24);
    CHECK(squarefree_part(BigInt(-1815)) == BigInt(-15));
  }

  TEST_CASE("squarefree part matches divisor search") {
    for (i64 n = -2000; n <= 2000; ++n) {
      if (n == 0) continue;
      const i64 d = squarefree_part(n);
      CHECK(d == brute_squarefree(n));
      CHECK(squarefree_part(BigInt(n)) == BigInt(d));
    }
  }

  TEST_CASE("factorization and prime powers") {
    const auto f = factorize(-360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<i64, int>{2, 3});
    CHECK(f[1] == std::pair<i64, int>{3, 2});
    CHECK(f[2] == std::pair<i64, int>{5, 1});
    CHECK(prime_power(49) == std::pair<i64, int>{7, 2});
    CHECK_FALSE(prime_power(12).has_value());
    CHECK(euler_phi(16) == 8);
    CHECK(euler_phi(63) == 36);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
  }

  TEST_CASE("kronecker symbol matches Euler's criterion") {
    for (i64 p : {3, 5, 7, 11, 13}) {
      for (i64 a = -20; a <= 20; ++a) {
        i64 e = 1;
        for (i64 k = 0; k < (p - 1) / 2; ++k) e = mod_floor(e * a, p);
        const int expect = mod_floor(a, p) == 0 ? 0 : (e == 1 ? 1 : -1);
        CHECK(kronecker(a, p) == expect);
      }
    }
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 2) == 0);
  }

  TEST_CASE("fundamental discriminants") {
    CHECK(fundamental_discriminant(-1) == -4);
    CHECK(fundamental_discriminant(2) == 8);
    CHECK(fundamental_discriminant(-7) == -7);
    CHECK(fundamental_discriminant(3) == 12);
    CHECK(QuadDisc::from_integer(-56).d == -14);
    CHECK(QuadDisc::from_integer(-56).fund_disc == -56);
    CHECK(QuadDisc::from_fundamental(12).d == 3);
  }

  TEST_CASE("quadratic subfields of cyclotomic fields") {
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(-7), 7));
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(5), 5));
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(2), 8));
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(-1), 4));
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(-3), 3));
    CHECK_FALSE(quad_in_cyclotomic(QuadDisc::from_integer(2), 4));
    CHECK_FALSE(quad_in_cyclotomic(QuadDisc::from_integer(-14), 7));
    CHECK_FALSE(quad_in_cyclotomic(QuadDisc::from_integer(7), 7));
    CHECK(quad_in_cyclotomic(QuadDisc::from_integer(7), 28));
  }

  TEST_CASE("square classes multiply") {
    CHECK(square_class_product(-7, -14) == 2);
    CHECK(square_class_product(3, 3) == 1);
    CHECK(square_class_product(-3, -1) == 3);
  }
}
