#include "maxab/cmcurves.hpp"
#include "maxab/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace maxab;

namespace {

RationalCurve curve(i64 A, i64 B) { return RationalCurve{Rational(A), Rational(B)}; }

// Reference table, frozen: j, deltaK, f.
struct JRow {
  const char* j;
  i64 delta_K, f;
};
constexpr JRow kRows[] = {
    {"0", -3, 1},          {"54000", -3, 2},      {"-12288000", -3, 3}, {"1728", -4, 1},   {"287496", -4, 2},
    {"-3375", -7, 1},      {"16581375", -7, 2},   {"8000", -8, 1},      {"-32768", -11, 1}, {"-884736", -19, 1},
    {"-884736000", -43, 1}, {"-147197952000", -67, 1}, {"-262537412640768000", -163, 1},
};

}  // namespace

TEST_SUITE("cmcurves") {
  TEST_CASE("j-invariants of example curves") {
    CHECK(j_invariant(curve(-35, 98)) == Rational(-3375));
    CHECK(j_invariant(curve(0, -6)) == Rational(0));
    CHECK(j_invariant(curve(9, 0)) == Rational(1728));
    CHECK(j_invariant(curve(-30, 56)) == Rational(8000));
    CHECK(j_invariant(curve(-15, 22)) == Rational(54000));
    CHECK_THROWS_AS(j_invariant(curve(-3, 2)), Error);
  }

  TEST_CASE("CM recognition") {
    CHECK(recognize_cm(curve(-35, 98)) == CMOrder{-7, 1});
    CHECK(recognize_cm(curve(-9504, 365904)) == CMOrder{-11, 1});
    CHECK(recognize_cm(curve(-15, 22)) == CMOrder{-3, 2});
    CHECK_THROWS_AS(recognize_cm(curve(1, 1)), Error);
    CHECK_THROWS_AS(table_curve(CMOrder{-15, 1}), Error);
  }

  TEST_CASE("table rows") {
    const auto& t = cm_table();
    REQUIRE(t.size() == std::size(kRows));
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(t[i].j == BigInt(kRows[i].j));
      CHECK(t[i].order == CMOrder{kRows[i].delta_K, kRows[i].f});
      const RationalCurve E{Rational(t[i].A), Rational(t[i].B)};
      CHECK(j_invariant(E) == Rational(t[i].j));
      CHECK(table_curve(t[i].order) == E);
    }
  }

  TEST_CASE("data file matches the built-in table") {
    std::ifstream in(std::string(MAXAB_DATA_DIR) + "/cm_curves.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(nlohmann::json::parse(ss.str()) == nlohmann::json::parse(cm_table_json()));
  }

  TEST_CASE("twist classes") {
    const auto q = twist_data(curve(-140, -784));
    CHECK(q.kind == TwistKind::Quadratic);
    CHECK(q.d == -14);
    CHECK(q.alpha == -14);
    const auto s = twist_data(curve(0, -6));
    CHECK(s.kind == TwistKind::Sextic);
    CHECK(s.d == -24);
    const auto r = twist_data(curve(9, 0));
    CHECK(r.kind == TwistKind::Quartic);
    CHECK(r.d == 9);
    CHECK(r.alpha == 3);
    CHECK(alpha_of(curve(25, 0)) == 5);
    CHECK(alpha_of(curve(-35, 98)) == 7);
    CHECK(has_extra_automorphisms(CMOrder{-4, 1}));
    CHECK_FALSE(has_extra_automorphisms(CMOrder{-3, 2}));
  }

  TEST_CASE("rational parsing") {
    CHECK(parse_rational(" -7/4 ") == Rational(-7, 4));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(rational_to_string(Rational(-6, 4)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1x"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
  }

  TEST_CASE("twisting a reference curve recovers the twist parameter") {
    for (const auto& row : cm_table()) {
      const RationalCurve E0 = table_curve(row.order);
      for (i64 d : {-30, -7, -2, -1, 2, 3, 5, 6, 11}) {
        RationalCurve E;
        BigInt expect;
        if (row.j == 0) {
          E = RationalCurve{Rational(0), E0.B * d};
          expect = d;
        } else if (row.j == 1728) {
          E = RationalCurve{E0.A * d, Rational(0)};
          expect = d;
        } else {
          E = RationalCurve{E0.A * d * d, E0.B * d * d * d};
          expect = d;
        }
        const auto t = twist_factor(E);
        CHECK(t.base_order == row.order);
        CHECK(t.d == expect);
        // Scaling by a unit power leaves the class unchanged.
        const RationalCurve F{E.A * 16, E.B * 64};
        CHECK(twist_factor(F).d == expect);
      }
    }
  }
}
