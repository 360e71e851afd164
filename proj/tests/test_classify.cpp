#include "maxab/classify.hpp"
#include "maxab/errors.hpp"

#include <doctest.h>

#include <random>

using namespace maxab;

namespace {

RationalCurve curve(i64 A, i64 B) { return RationalCurve{Rational(A), Rational(B)}; }

// Degree of Q(zeta_m, sqrt(D_1), ...) by counting the subsets of discriminants
// whose product field already lies in Q(zeta_m).
i64 degree_by_subsets(const AbelianFieldDesc& F) {
  const std::size_t k = F.quad_discs.size();
  i64 inside = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    i64 d = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) d = square_class_product(d, squarefree_of_fundamental(F.quad_discs[i]));
    if (d == 1 || quad_in_cyclotomic(QuadDisc::from_integer(d), F.cyclo_level)) ++inside;
  }
  return euler_phi(F.cyclo_level) * (i64{1} << k) / inside;
}

struct Golden {
  i64 A, B, p;
  int n;
  AbelianFieldDesc field;
};

}  // namespace

TEST_SUITE("classify") {
  TEST_CASE("field degrees") {
    CHECK(field_degree({5, {-7}}) == 8);
    CHECK(field_degree({7, {8}}) == 12);
    CHECK(field_degree({9, {8}}) == 12);
    CHECK(field_degree({1, {-11}}) == 2);
    CHECK(field_degree({16, {}}) == 8);
  }

  TEST_CASE("canonical forms") {
    CHECK(canonicalize({7, {-56}}) == AbelianFieldDesc{7, {8}});
    CHECK(canonicalize({6, {-3}}) == AbelianFieldDesc{3, {}});
    CHECK(canonicalize({10, {5, -20}}) == AbelianFieldDesc{5, {-4}});
    CHECK(canonicalize({8, {-3}}) == canonicalize({8, {12}}));
    CHECK(canonicalize({1, {-7, 8, -56}}) == canonicalize({1, {-7, 8}}));
  }

  TEST_CASE("canonical degree agrees with subset count") {
    std::mt19937_64 rng(11);
    const std::vector<i64> discs = {-3, -4, 5, -7, 8, -8, 12, -11, 13, -15, -20, 21, -24, 28, -56, 44, -19};
    const std::vector<i64> levels = {1, 2, 3, 4, 5, 7, 8, 9, 12, 16, 20, 24, 28, 27, 32};
    std::uniform_int_distribution<std::size_t> pick_d(0, discs.size() - 1), pick_m(0, levels.size() - 1);
    std::uniform_int_distribution<int> count(0, 3);
    for (int trial = 0; trial < 500; ++trial) {
      AbelianFieldDesc F{levels[pick_m(rng)], {}};
      for (int i = count(rng); i > 0; --i) F.quad_discs.push_back(discs[pick_d(rng)]);
      const auto C = canonicalize(F);
      CHECK(field_degree(C) == degree_by_subsets(F));
      CHECK(canonicalize(C) == C);
      // Same field from a reordered, redundant generating set.
      AbelianFieldDesc G{F.cyclo_level, {F.quad_discs.rbegin(), F.quad_discs.rend()}};
      if (G.quad_discs.size() >= 2) {
        const i64 prod = square_class_product(squarefree_of_fundamental(G.quad_discs[0]),
                                              squarefree_of_fundamental(G.quad_discs[1]));
        if (prod != 1) G.quad_discs.push_back(fundamental_discriminant(prod));
      }
      CHECK(canonicalize(G) == C);
    }
  }

  TEST_CASE("golden examples") {
    const std::vector<Golden> goldens = {
        {-35, 98, 5, 1, {5, {-7}}},
        {-140, -784, 7, 1, {7, {-56}}},
        {0, -6, 3, 1, {3, {8}}},
        {0, -6, 3, 2, {9, {8}}},
        {-9504, 365904, 2, 1, {2, {-11}}},
        {-9504, 365904, 2, 2, {4, {-11}}},
        {-9504, 365904, 2, 3, {8, {-11}}},
        {-15, 22, 2, 1, {1, {12}}},
        {-15, 22, 2, 2, {8, {-3}}},
        {9, 0, 2, 2, {8, {12}}},
        {-30, 56, 2, 2, {8, {12}}},
    };
    for (const auto& g : goldens) {
      CAPTURE(g.A);
      CAPTURE(g.p);
      CAPTURE(g.n);
      const auto r = classify_max_abelian(curve(g.A, g.B), g.p, g.n);
      CHECK(r.field == canonicalize(g.field));
      CHECK(r.degree == field_degree(canonicalize(g.field)));
    }
  }

  TEST_CASE("text rendering") {
    CHECK(render_text(classify_max_abelian(curve(-35, 98), 5, 1)) == "M = K(zeta_5), K = Q(sqrt(-7)), degree 8");
    CHECK(render_text(classify_max_abelian(curve(0, -6), 3, 1)) == "M = Q(zeta_3, sqrt(2)), degree 4");
  }

  TEST_CASE("predicted indices") {
    CHECK(predicted_index(curve(0, 16), 3, 2) == 6);
    CHECK(predicted_index(curve(0, 1), 3, 2) == 2);
    CHECK(predicted_index(curve(0, -6), 3, 2) == 3);
    CHECK(predicted_index(curve(9, 0), 2, 2) == 2);
    CHECK(predicted_index(curve(1, 0), 2, 3) == 4);
    CHECK(predicted_index(curve(-4320, 96768), 2, 2) == 2);
    CHECK_FALSE(predicted_index(curve(-35, 98), 5, 1).has_value());
  }

  TEST_CASE("report JSON round trip") {
    for (const auto& [A, B, p, n] : std::vector<std::tuple<i64, i64, i64, int>>{
             {-35, 98, 5, 1}, {0, -6, 3, 2}, {9, 0, 2, 3}, {-15, 22, 2, 2}}) {
      const auto r = classify_max_abelian(curve(A, B), p, n);
      CHECK(report_from_json(report_to_json(r)) == r);
    }
    CHECK_THROWS_AS(report_from_json("{"), Error);
    CHECK_THROWS_AS(report_from_json("{}"), Error);
  }

  TEST_CASE("input errors") {
    CHECK_THROWS_AS(classify_max_abelian(curve(1, 1), 5, 1), Error);
    CHECK_THROWS_AS(classify_max_abelian(curve(-35, 98), 4, 1), Error);
    CHECK_THROWS_AS(classify_max_abelian(curve(-35, 98), 5, 0), Error);
  }

  TEST_CASE("degree grows with the level") {
    for (const auto& row : cm_table()) {
      const RationalCurve E{Rational(row.A), Rational(row.B)};
      for (i64 p : {2, 3, 5, 7}) {
        i64 prev = 1;
        for (int n = 1; n <= 4; ++n) {
          const auto r = classify_max_abelian(E, p, n);
          CHECK(r.degree % prev == 0);
          CHECK(r.degree == field_degree(r.field));
          CHECK(r.field == canonicalize(r.field));
          prev = r.degree;
        }
      }
    }
  }
}
