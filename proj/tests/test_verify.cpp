#include "maxab/errors.hpp"
#include "maxab/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>

using namespace maxab;

namespace {

std::vector<std::size_t> derived_orders(std::string_view label, int n_max) {
  std::vector<std::size_t> out;
  for (const auto& row : commutator_order_table(find_case(label), n_max)) out.push_back(row.derived);
  return out;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("catalog is sorted, unique and well formed") {
    const auto& cat = image_catalog();
    REQUIRE(cat.size() >= 60);
    std::set<std::string> labels;
    for (std::size_t i = 0; i < cat.size(); ++i) {
      labels.insert(cat[i].label);
      if (i > 0) CHECK(cat[i - 1].label < cat[i].label);
      CHECK(cat[i].n_max == (cat[i].p == 2 ? 4 : 3));
      CHECK(recognize_cm(cat[i].witness) == cat[i].order);
    }
    CHECK(labels.size() == cat.size());
    CHECK_THROWS_AS(find_case("no-such-case"), Error);
  }

  TEST_CASE("materialized orders") {
    CHECK(materialize(find_case("ramified-p7-disc-7-index2-eps+1"), 1).order() == 42);
    CHECK(materialize(find_case("ramified-p7-disc-7-full"), 1).order() == 84);
    CHECK(derived_subgroup(materialize(find_case("ramified-p7-disc-7-full"), 1)).order() == 7);
    CHECK(derived_subgroup(materialize(find_case("j0-p3-index6-G1-eps+1"), 1)).order() == 1);
    const auto& g4 = find_case("j1728-p2-G4a-c1p");
    CHECK(subgroup_index(materialize(g4, 2), case_normalizer(g4, 2)) == 4);
  }

  TEST_CASE("commutator order tables") {
    CHECK(derived_orders("odd-disc-p2-disc-11-full", 4) == std::vector<std::size_t>{3, 6, 12, 24});
    CHECK(derived_orders("odd-disc-p2-disc-7-full", 4) == std::vector<std::size_t>{1, 2, 4, 8});
    CHECK(derived_orders("j0-p3-index2-eps+1", 3) == std::vector<std::size_t>{3, 9, 27});
    const auto rows = commutator_order_table(find_case("unramified-split-p5-disc-4"), 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].order == 32);
    CHECK(rows[0].derived == 4);
    CHECK(rows[0].abelianization == 8);
  }

  TEST_CASE("bound step") {
    const auto& c = find_case("ramified-p7-disc-7-full");
    const auto G = materialize(c, 2);
    const auto gens = materialize_generators(c, 2);
    REQUIRE(gens.size() >= 2);
    const auto trivial = bound_step(G, gens[0], gens[1], Mat2::identity(49));
    CHECK(trivial.quotient.is_identity());
    CHECK_FALSE(trivial.certifies());
    CHECK_THROWS_AS(bound_step(G, gens[0], gens[1], gens[0]), Error);
    CHECK_THROWS_AS(bound_step(G, Mat2(0, 1, 1, 1, 49), gens[1], Mat2::identity(49)), Error);
    CHECK_THROWS_AS(bound_step_deep(G, gens[0], gens[1], Mat2::identity(49), 3), Error);
  }

  TEST_CASE("step certificates are explained and consistent") {
    for (const char* label : {"ramified-p7-disc-7-full", "unramified-split-p5-disc-4", "odd-disc-p2-disc-11-full",
                              "j1728-p2-G4a-c1"}) {
      const auto& c = find_case(label);
      for (int n = 1; n < c.n_max; ++n) {
        const auto s = certify_step(c, n);
        CAPTURE(label);
        CAPTURE(n);
        CHECK(s.explained());
        CHECK(s.consistent());
        if (s.report) CHECK(s.report->certifies());
      }
    }
    const auto s = certify_step(find_case("unramified-split-p5-disc-4"), 1);
    CHECK(s.kind == CertificateKind::Kernel);
    CHECK(s.derived_kernel() == 5);
  }

  TEST_CASE("symbolic quotients match") {
    const auto checks = check_symbolic_quotients();
    CHECK(checks.size() >= 8);
    for (const auto& s : checks) {
      CAPTURE(s.presentation);
      CAPTURE(s.p);
      CHECK(s.matches);
      CHECK(s.report.quotient == s.expected);
    }
  }

  TEST_CASE("reduction lemmas and structure") {
    const auto& c = find_case("j0-p3-index3-G2-eps+1");
    for (int n = 1; n <= 2; ++n) {
      const auto L = check_reduction_lemmas(c, n);
      CHECK(L.derived_surjective);
      CHECK((L.derived_kernel == 1 || L.derived_kernel == 3 || L.derived_kernel == 9));
    }
    CHECK(check_reduction_lemmas(c, 3).kernel_equality == true);
    const auto S = check_structure(c, 3);
    CHECK(S.index == 3);
  }

  TEST_CASE("degree identity") {
    const auto& c = find_case("unramified-inert-p5-disc-7");
    const auto D = check_degree_identity(c, c.witness, 1);
    CHECK(D.abelianization == 8);
    CHECK(D.degree == 8);
  }

  TEST_CASE("inert normalizers mod 16 are conjugate") {
    const auto& discs = inert_conjugacy_discs();
    CHECK(discs == std::vector<i64>{-11, -19, -27, -43, -67, -163});
    for (i64 d : discs) CHECK(inert_normalizer_16(d).order() == 384);
    const auto pair = conjugacy_pair(-11, -163);
    REQUIRE(pair.conjugator.has_value());
    CHECK(pair.verified);
    CHECK(conjugates_onto(*pair.conjugator, inert_normalizer_16(-11), inert_normalizer_16(-163)));
  }

  TEST_CASE("suite lines are valid JSON") {
    const auto res = run_suite("conjugacy");
    CHECK(res.lines.size() == 15);
    CHECK(res.all_pass());
    for (const auto& line : res.lines) {
      const auto j = nlohmann::json::parse(line.json);
      CHECK(j.at("suite") == "conjugacy");
      CHECK(j.at("pass") == true);
    }
    CHECK_THROWS_AS(run_suite("bogus"), Error);
  }
}
