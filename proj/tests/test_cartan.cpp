#include "maxab/cartan.hpp"
#include "maxab/errors.hpp"

#include <doctest.h>

using namespace maxab;

TEST_SUITE("cartan") {
  TEST_CASE("orders for disc -7") {
    const auto P = params_for(CMOrder{-7, 1}, 7);
    CHECK(P.flavor == Flavor::Ramified);
    CHECK(build_cartan(P).order() == 42);
    CHECK(build_normalizer(P).order() == 84);
  }

  TEST_CASE("2-adic orders") {
    CHECK(build_cartan(params_for(CMOrder{-4, 1}, 4)).order() == 8);
    CHECK(build_normalizer(params_for(CMOrder{-4, 1}, 4)).order() == 16);
    CHECK(build_normalizer(params_for(CMOrder{-7, 1}, 4)).order() == 8);
    CHECK(build_cartan(params_for(CMOrder{-3, 1}, 4)).order() == 12);
    CHECK(build_normalizer(params_for(CMOrder{-3, 1}, 4)).order() == 24);
  }

  TEST_CASE("collapse mod 2") {
    CHECK(build_cartan(params_for(CMOrder{-3, 2}, 2)).order() == 2);
    CHECK(build_normalizer(params_for(CMOrder{-3, 2}, 2)).order() == 2);
    CHECK(build_cartan(params_for(CMOrder{-7, 1}, 2)).order() == 1);
    CHECK(build_normalizer(params_for(CMOrder{-7, 1}, 2)).order() == 2);
  }

  TEST_CASE("closed-form orders") {
    CHECK(expected_cartan_order(Flavor::Ramified, 3, 3) == 486);
    CHECK(expected_cartan_order(Flavor::Split, 3, 2) == 36);
    CHECK(expected_cartan_order(Flavor::Inert, 2, 3) == 48);
    CHECK(expected_cartan_order(Flavor::Ramified, 2, 1) == 2);
    CHECK(expected_cartan_order(Flavor::Split, 2, 1) == 1);
    CHECK(expected_cartan_order(Flavor::Inert, 2, 4) == 192);
  }

  TEST_CASE("parameters") {
    const auto P = params_for(CMOrder{-7, 1}, 8);
    CHECK(P.delta.value() == 6);
    CHECK(P.phi.value() == 1);
    CHECK(P.flavor == Flavor::Split);
    const auto Q = params_for(CMOrder{-3, 2}, 8);
    CHECK(Q.delta.value() == 5);
    CHECK(Q.phi.value() == 0);
    const auto R = params_for(CMOrder{-7, 1}, 49);
    CHECK(R.delta.value() == 35);
    CHECK(R.phi.value() == 0);
    CHECK(splitting_type(CMOrder{-3, 1}, 3) == Flavor::Ramified);
    CHECK(splitting_type(CMOrder{-11, 1}, 2) == Flavor::Inert);
    CHECK(splitting_type(CMOrder{-4, 1}, 5) == Flavor::Split);
    CHECK(splitting_type(CMOrder{-3, 1}, 5) == Flavor::Inert);
  }

  TEST_CASE("matrix shapes") {
    const auto P = params_for(CMOrder{-7, 1}, 8);
    CHECK(cartan_matrix(P, 1, 2) == Mat2(3, 2, 4, 1, 8));
    CHECK_THROWS_AS(cartan_matrix(P, 1, 1), Error);
    CHECK(conj_matrix(P, 1) == Mat2(7, 0, 1, 1, 8));
    CHECK(conj_matrix(P, -1) == Mat2(1, 0, 1, 7, 8));
    const auto R = params_for(CMOrder{-4, 1}, 5);
    CHECK(cartan_matrix(R, 0, 1) == Mat2(0, 1, 4, 0, 5));
    CHECK_THROWS_AS(cartan_matrix(R, 1, 2), Error);
    CHECK(c_sp(Rational(1, 2), Rational(3), 5) == Mat2(3, 0, 0, 3, 5));
    CHECK(c_ns(Rational(1), Rational(1), Rational(-1), 3) == Mat2(1, 2, 1, 1, 3));
  }

  TEST_CASE("non-split Cartan needs a nonsquare delta") {
    CHECK_THROWS_AS(nonsplit_cartan(5, 1, Rational(4)), Error);
    CHECK_THROWS_AS(nonsplit_cartan(5, 1, Rational(0)), Error);
    CHECK(nonsplit_cartan(5, 1, Rational(-7, 4)).order() == 24);
  }

  TEST_CASE("Cartan subgroup is abelian and matches its generators") {
    for (i64 M : {8, 9, 16, 25, 27}) {
      for (const CMOrder o : {CMOrder{-3, 1}, CMOrder{-4, 1}, CMOrder{-7, 1}, CMOrder{-8, 1}, CMOrder{-3, 2}}) {
        const auto P = params_for(o, M);
        const auto C = build_cartan(P);
        CHECK(is_abelian(C));
        CHECK(closure(cartan_generators(P), M) == C);
        CHECK(C.order() == cartan_elements(P).size());
      }
    }
  }

  TEST_CASE("kernel matrices") {
    const auto P = params_for(CMOrder{-7, 1}, 9);
    const auto K = kernel_matrices(P);
    CHECK(K.size() == 9);
    for (const auto& k : K) CHECK(k.is_identity_mod(3));
    CHECK(split_kernel_matrices(5, 1).size() == 25);
    CHECK(nonsplit_kernel_matrices(5, 1, Rational(2)).size() == 25);
  }
}
