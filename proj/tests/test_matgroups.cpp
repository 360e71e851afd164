#include "maxab/cartan.hpp"
#include "maxab/errors.hpp"
#include "maxab/matgroups.hpp"

#include <doctest.h>

#include <set>

using namespace maxab;

TEST_SUITE("matgroups") {
  TEST_CASE("matrix arithmetic") {
    const Mat2 A(1, 2, 3, 4, 7);
    const Mat2 Ai = mat_inv(A);
    CHECK((A * Ai).is_identity());
    CHECK((Ai * A).is_identity());
    CHECK(A.det().value() == 5);
    CHECK(Mat2(2, 0, 0, 1, 4).invertible() == false);
    CHECK_THROWS_AS(mat_inv(Mat2(2, 0, 0, 1, 4)), Error);
    CHECK_THROWS_AS(A * Mat2::identity(5), Error);
    CHECK(Mat2(1, 3, 6, 1, 9).is_identity_mod(3));
    CHECK_FALSE(Mat2(1, 3, 6, 1, 9).is_identity_mod(9));
    CHECK(Mat2(4, 5, 6, 7, 9).reduce(3) == Mat2(1, 2, 0, 1, 3));
  }

  TEST_CASE("general linear group orders") {
    CHECK(general_linear(2).size() == 6);
    CHECK(general_linear(3).size() == 48);
    CHECK(general_linear(4).size() == 96);
  }

  TEST_CASE("closure of GL(2,2) generators") {
    const auto G = closure({Mat2(1, 1, 0, 1, 2), Mat2(0, 1, 1, 0, 2)}, 2);
    CHECK(G.order() == 6);
    CHECK(derived_subgroup(G).order() == 3);
    CHECK(abelianization_order(G) == 2);
    CHECK_FALSE(is_abelian(G));
  }

  TEST_CASE("closure is closed and sorted") {
    const auto G = closure({Mat2(2, 1, 1, 1, 9), Mat2(0, 1, 8, 0, 9)}, 9);
    std::set<std::uint64_t> keys;
    for (const auto& x : G.elements()) keys.insert(x.key());
    CHECK(keys.size() == G.order());
    for (std::size_t i = 1; i < G.order(); ++i) CHECK(G.elements()[i - 1] < G.elements()[i]);
    for (const auto& x : G.elements())
      for (const auto& y : G.elements()) CHECK(G.contains(x * y));
  }

  TEST_CASE("closure refuses singular generators and respects the cap") {
    CHECK_THROWS_AS(closure({Mat2(2, 0, 0, 1, 4)}, 4), Error);
    CHECK_THROWS_AS(closure({Mat2(1, 1, 0, 1, 8), Mat2(0, 1, 1, 0, 8)}, 8, 10), Error);
  }

  TEST_CASE("split and nonsplit normalizers mod 5") {
    const auto Ns = split_normalizer(5, 1);
    CHECK(Ns.order() == 32);
    CHECK(derived_subgroup(Ns).order() == 4);
    const auto Nn = nonsplit_normalizer(5, 1, Rational(2));
    CHECK(Nn.order() == 48);
    CHECK(derived_subgroup(Nn).order() == 6);
  }

  TEST_CASE("generator commutators give the all-pairs derived subgroup") {
    std::vector<FiniteMatGroup> groups = {
        split_normalizer(3, 1),  split_normalizer(5, 1),         nonsplit_normalizer(3, 1, Rational(-1)),
        split_normalizer(3, 2),  nonsplit_normalizer(5, 1, Rational(2)),
        build_normalizer(params_for(CMOrder{-7, 1}, 8)),         build_normalizer(params_for(CMOrder{-4, 1}, 4)),
        closure({Mat2(1, 1, 0, 1, 4), Mat2(0, 1, 1, 0, 4)}, 4),
    };
    for (const auto& G : groups) CHECK(derived_subgroup(G) == derived_subgroup_all_pairs(G));
  }

  TEST_CASE("kernels and indices") {
    const auto G = build_normalizer(params_for(CMOrder{-7, 1}, 49));
    const auto K = kernel_of_reduction(G, 7);
    CHECK(K.order() == 49);
    CHECK(reduce_group(G, 7).order() * K.order() == G.order());
    CHECK(subgroup_index(K, G) == G.order() / 49);
    CHECK(is_subgroup(K, G));
    CHECK_THROWS_AS(reduce_group(G, 5), Error);
    CHECK_THROWS_AS(subgroup_index(split_cartan(7, 2), G), Error);
  }

  TEST_CASE("abelian groups") {
    CHECK(is_abelian(split_cartan(5, 2)));
    CHECK(is_abelian(build_cartan(params_for(CMOrder{-3, 1}, 27))));
    CHECK_FALSE(is_abelian(split_normalizer(5, 1)));
  }

  TEST_CASE("conjugator search") {
    const auto G = split_cartan(3, 1);
    const Mat2 U(1, 1, 0, 1, 3);
    std::vector<Mat2> moved;
    for (const auto& g : G.elements()) moved.push_back(U * g * mat_inv(U));
    const auto H = closure(moved, 3);
    const auto W = find_conjugator(G, H);
    REQUIRE(W.has_value());
    CHECK(conjugates_onto(*W, G, H));
    CHECK_FALSE(find_conjugator(split_cartan(3, 1), nonsplit_cartan(3, 1, Rational(-1))).has_value());
  }

  TEST_CASE("greedy generator reduction") {
    const auto C = split_cartan(5, 1);
    const auto gens = reduce_generators(C.elements(), 5);
    CHECK(gens.size() <= 2);
    CHECK(closure(gens, 5) == C);
  }
}
