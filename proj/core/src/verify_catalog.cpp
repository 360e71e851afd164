#include "maxab/errors.hpp"
#include "maxab/verify.hpp"

#include <algorithm>

namespace maxab {

GenSpec GenSpec::conj(int eps) {
  GenSpec g;
  g.kind = GenKind::Conj;
  g.eps = eps;
  g.text = eps == 1 ? "c_1" : "c_-1";
  return g;
}

GenSpec GenSpec::cartan(const Rational& a, const Rational& b) {
  GenSpec g;
  g.kind = GenKind::Cartan;
  g.a = a;
  g.b = b;
  g.text = "c(" + rational_to_string(a) + "," + rational_to_string(b) + ")";
  return g;
}

GenSpec GenSpec::literal(i64 e11, i64 e12, i64 e21, i64 e22) {
  GenSpec g;
  g.kind = GenKind::Literal;
  g.entries = {e11, e12, e21, e22};
  g.text = "[[" + std::to_string(e11) + "," + std::to_string(e12) + "],[" + std::to_string(e21) + "," +
           std::to_string(e22) + "]]";
  return g;
}

GenSpec GenSpec::scalar_of(i64 u) {
  GenSpec g;
  g.kind = GenKind::Scalar;
  g.scalar = u;
  g.text = std::to_string(u) + "I";
  return g;
}

GenSpec GenSpec::scalar_units() {
  GenSpec g;
  g.kind = GenKind::ScalarUnits;
  g.text = "{uI}";
  return g;
}

GenSpec GenSpec::cartan_all() {
  GenSpec g;
  g.kind = GenKind::CartanAll;
  g.text = "C";
  return g;
}

GenSpec GenSpec::cartan_filter(CartanPredicate pred, std::string description) {
  GenSpec g;
  g.kind = GenKind::CartanFilter;
  g.filter = std::move(pred);
  g.text = std::move(description);
  return g;
}

GenSpec GenSpec::cartan_powers(int k) {
  GenSpec g;
  g.kind = GenKind::CartanPowers;
  g.power = k;
  g.text = "C^" + std::to_string(k);
  return g;
}

namespace {

RationalCurve curve(i64 A, i64 B) { return RationalCurve{Rational(A), Rational(B)}; }

Mat2 power(Mat2 x, int k) {
  Mat2 r = Mat2::identity(x.modulus());
  for (; k > 0; k >>= 1) {
    if (k & 1) r = r * x;
    x = x * x;
  }
  return r;
}

struct GammaPrime {
  const char* tag;
  GenSpec gen;
};

std::vector<GammaPrime> gamma_primes() {
  return {{"c1", GenSpec::literal(1, 0, 0, -1)},
          {"c-1", GenSpec::literal(-1, 0, 0, 1)},
          {"c1p", GenSpec::literal(0, 1, 1, 0)},
          {"c-1p", GenSpec::literal(0, -1, -1, 0)}};
}

bool is_nonzero_square_mod_p(i64 a, i64 p) { return a % p != 0 && kronecker(a % p, p) == 1; }

std::vector<ImageCase> make_catalog() {
  std::vector<ImageCase> out;
  auto add = [&out](std::string label, CMOrder order, i64 p, std::vector<GenSpec> recipe, RationalCurve witness,
                    int n_max, int def, int index) {
    out.push_back(ImageCase{std::move(label), order, p, std::move(recipe), witness, n_max, def, index});
  };
  const std::vector<int> signs{1, -1};
  auto sign_tag = [](int e) { return e == 1 ? std::string("eps+1") : std::string("eps-1"); };

  // odd p not dividing the discriminant
  add("unramified-split-p5-disc-4", {-4, 1}, 5, {GenSpec::cartan_all(), GenSpec::conj(1)}, curve(1, 0), 3, 1, 1);
  add("unramified-inert-p5-disc-7", {-7, 1}, 5, {GenSpec::cartan_all(), GenSpec::conj(1)}, curve(-35, 98), 3, 1, 1);
  for (i64 p : {5, 7}) {
    add("unramified-j0-p" + std::to_string(p) + "-cubes", {-3, 1}, p,
        {GenSpec::cartan_powers(3), GenSpec::scalar_units(), GenSpec::conj(1)}, curve(0, 16), 3, 1, 3);
  }

  // odd p dividing the discriminant, j != 0
  auto squares = GenSpec::cartan_filter([](i64 a, i64, i64 p, i64) { return is_nonzero_square_mod_p(a, p); },
                                        "{c(a,b): a a nonzero square mod p}");
  struct Ramified {
    const char* tag;
    CMOrder order;
    i64 p;
    RationalCurve full, half;
  };
  const Ramified ramified[] = {
      {"p7-disc-7", {-7, 1}, 7, curve(-140, -784), curve(-1715, 33614)},
      {"p3-disc-27", {-3, 3}, 3, curve(-1920, 32384), curve(-480, 4048)},
      {"p3-disc-12", {-3, 2}, 3, curve(-60, 176), curve(-15, 22)},
  };
  for (const auto& r : ramified) {
    add(std::string("ramified-") + r.tag + "-full", r.order, r.p, {GenSpec::cartan_all(), GenSpec::conj(1)}, r.full,
        3, 1, 1);
    for (int e : signs)
      add(std::string("ramified-") + r.tag + "-index2-" + sign_tag(e), r.order, r.p, {squares, GenSpec::conj(e)},
          r.half, 3, 1, 2);
  }

  // p = 3, j = 0
  {
    const CMOrder o{-3, 1};
    add("j0-p3-full", o, 3, {GenSpec::cartan_all(), GenSpec::conj(1)}, curve(0, 32), 3, 3, 1);
    auto a1 = GenSpec::cartan_filter([](i64 a, i64, i64, i64) { return a % 3 == 1; }, "{c(a,b): a = 1 mod 3}");
    auto a1b0 = GenSpec::cartan_filter([](i64 a, i64 b, i64, i64) { return a % 3 == 1 && b % 3 == 0; },
                                       "{c(a,b): a = 1, b = 0 mod 3}");
    auto b0 = GenSpec::cartan_filter([](i64, i64 b, i64, i64) { return b % 3 == 0; }, "{c(a,b): b = 0 mod 3}");
    const Rational g3a(-5, 4), g3b(1, 2);
    for (int e : signs) {
      const std::string s = "-" + sign_tag(e);
      const GenSpec c = GenSpec::conj(e);
      add("j0-p3-index2" + s, o, 3, {a1, c}, curve(0, 64), 3, 3, 2);
      add("j0-p3-index6-G1" + s, o, 3, {a1b0, c}, curve(0, 16), 3, 3, 6);
      add("j0-p3-index6-G2" + s, o, 3, {c, GenSpec::scalar_of(4), GenSpec::cartan(1, 1)}, curve(0, 144), 3, 3, 6);
      add("j0-p3-index6-G3" + s, o, 3, {c, GenSpec::scalar_of(4), GenSpec::cartan(g3a, g3b)}, curve(0, -48), 3, 3,
          6);
      add("j0-p3-index3-G1" + s, o, 3, {b0, c}, curve(0, 128), 3, 3, 3);
      add("j0-p3-index3-G2" + s, o, 3, {c, GenSpec::scalar_of(2), GenSpec::cartan(1, 1)}, curve(0, -6), 3, 3, 3);
      add("j0-p3-index3-G3" + s, o, 3, {c, GenSpec::scalar_of(2), GenSpec::cartan(g3a, g3b)}, curve(0, 48), 3, 3,
          3);
    }
  }

  // p = 2, odd discriminant
  const std::vector<GenSpec> full{GenSpec::cartan_all(), GenSpec::conj(1)};
  add("odd-disc-p2-disc-7-full", {-7, 1}, 2, full, curve(-1715, 33614), 4, 4, 1);
  add("odd-disc-p2-disc-11-full", {-11, 1}, 2, full, curve(-9504, 365904), 4, 4, 1);
  add("odd-disc-p2-disc-3-full", {-3, 1}, 2, full, curve(0, 16), 4, 4, 1);
  for (int e : signs) {
    add("odd-disc-p2-j0-index3-" + std::string(e == 1 ? "gamma+" : "gamma-"), {-3, 1}, 2,
        {GenSpec::literal(0, e, e, 0), GenSpec::scalar_of(-1), GenSpec::literal(7, 4, -4, 3),
         GenSpec::literal(3, 6, -6, -3)},
        curve(0, 1), 4, 4, 3);
  }

  // p = 2, discriminants -12 and -28
  add("disc12-28-p2-disc-12-full", {-3, 2}, 2, full, curve(-15, 22), 4, 4, 1);
  add("disc12-28-p2-disc-28-full", {-7, 2}, 2, full, curve(-29155, 1915998), 4, 4, 1);

  // p = 2, j = 1728
  {
    const CMOrder o{-4, 1};
    add("j1728-p2-full", o, 2, full, curve(3, 0), 4, 4, 1);
    struct Family {
      const char* tag;
      std::vector<GenSpec> gens;
      int index;
      RationalCurve diag_witness, anti_witness;
    };
    const Family families[] = {
        {"G4a", {GenSpec::scalar_of(5), GenSpec::cartan(1, 2)}, 4, curve(-1, 0), curve(1, 0)},
        {"G4b", {GenSpec::scalar_of(5), GenSpec::cartan(-1, -2)}, 4, curve(-1, 0), curve(1, 0)},
        {"G4c", {GenSpec::scalar_of(-3), GenSpec::cartan(2, -1)}, 4, curve(2, 0), curve(2, 0)},
        {"G4d", {GenSpec::scalar_of(-3), GenSpec::cartan(-2, 1)}, 4, curve(2, 0), curve(2, 0)},
        {"G2a", {GenSpec::scalar_of(-1), GenSpec::scalar_of(3), GenSpec::cartan(1, 2)}, 2, curve(-9, 0),
         curve(9, 0)},
        {"G2b", {GenSpec::scalar_of(-1), GenSpec::scalar_of(3), GenSpec::cartan(2, 1)}, 2, curve(18, 0),
         curve(18, 0)},
    };
    for (const auto& f : families)
      for (const auto& g : gamma_primes()) {
        std::vector<GenSpec> gens = f.gens;
        gens.push_back(g.gen);
        const bool anti = g.gen.entries[0] == 0;
        add(std::string("j1728-p2-") + f.tag + "-" + g.tag, o, 2, std::move(gens),
            anti ? f.anti_witness : f.diag_witness, 4, 4, f.index);
      }
  }

  // p = 2, discriminants -8 and -16
  struct EvenDisc {
    const char* tag;
    CMOrder order;
    i64 beta;
    RationalCurve full, half;
  };
  const EvenDisc evens[] = {
      {"disc-8", {-8, 1}, 3, curve(-30, 56), curve(-4320, 96768)},
      {"disc-16", {-4, 2}, 5, curve(-99, 378), curve(-11, 14)},
  };
  for (const auto& d : evens) {
    const i64 delta = d.order.disc() / 4;
    add(std::string("disc8-16-p2-") + d.tag + "-full", d.order, 2, full, d.full, 4, 4, 1);
    for (int e : signs) {
      const std::string s = "-" + sign_tag(e);
      add(std::string("disc8-16-p2-") + d.tag + "-index2-G1" + s, d.order, 2,
          {GenSpec::conj(e), GenSpec::scalar_of(d.beta), GenSpec::literal(1, 1, delta, 1)}, d.half, 4, 4, 2);
      add(std::string("disc8-16-p2-") + d.tag + "-index2-G2" + s, d.order, 2,
          {GenSpec::conj(e), GenSpec::scalar_of(d.beta), GenSpec::literal(-1, -1, -delta, -1)}, d.half, 4, 4, 2);
    }
  }

  std::sort(out.begin(), out.end(), [](const ImageCase& x, const ImageCase& y) { return x.label < y.label; });
  return out;
}

}  // namespace

const std::vector<ImageCase>& image_catalog() {
  static const std::vector<ImageCase> catalog = make_catalog();
  return catalog;
}

const ImageCase& find_case(std::string_view label) {
  for (const auto& c : image_catalog())
    if (c.label == label) return c;
  raise(ErrorCode::UnsupportedInput, "unknown image case '" + std::string(label) + "'");
}

std::vector<Mat2> materialize_generators(const ImageCase& c, int n) {
  if (n < 1) raise(ErrorCode::UnsupportedInput, "level exponent must be >= 1");
  const i64 M = ipow(c.p, static_cast<unsigned>(n));
  const CartanParams params = params_for(c.order, M);
  std::vector<Mat2> gens;
  for (const GenSpec& g : c.recipe) {
    switch (g.kind) {
      case GenKind::Conj:
        gens.push_back(conj_matrix(params, g.eps));
        break;
      case GenKind::Cartan:
        gens.push_back(cartan_matrix(params, g.a, g.b));
        break;
      case GenKind::Literal:
        gens.emplace_back(g.entries[0], g.entries[1], g.entries[2], g.entries[3], M);
        break;
      case GenKind::Scalar:
        gens.push_back(Mat2::scalar(g.scalar, M));
        break;
      case GenKind::ScalarUnits: {
        std::vector<Mat2> units;
        for (i64 u = 1; u < M; ++u)
          if (gcd64(u, M) == 1) units.push_back(Mat2::scalar(u, M));
        for (const Mat2& x : reduce_generators(units, M)) gens.push_back(x);
        break;
      }
      case GenKind::CartanAll:
        for (const Mat2& x : cartan_generators(params)) gens.push_back(x);
        break;
      case GenKind::CartanFilter: {
        std::vector<Mat2> picked;
        for (const Mat2& x : cartan_elements(params))
          if (g.filter(x.at(1, 1), x.at(0, 1), c.p, M)) picked.push_back(x);
        for (const Mat2& x : reduce_generators(picked, M)) gens.push_back(x);
        break;
      }
      case GenKind::CartanPowers: {
        std::vector<Mat2> powers;
        for (const Mat2& x : cartan_elements(params)) powers.push_back(power(x, g.power));
        std::sort(powers.begin(), powers.end());
        powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
        for (const Mat2& x : reduce_generators(powers, M)) gens.push_back(x);
        break;
      }
    }
  }
  for (const Mat2& x : gens)
    if (!x.invertible())
      raise(ErrorCode::SingularGenerator, c.label + ": generator " + x.to_string() + " is singular");
  return gens;
}

FiniteMatGroup materialize(const ImageCase& c, int n) {
  return closure(materialize_generators(c, n), ipow(c.p, static_cast<unsigned>(n)));
}

FiniteMatGroup case_normalizer(const ImageCase& c, int n) {
  if (n < 1) raise(ErrorCode::UnsupportedInput, "level exponent must be >= 1");
  return build_normalizer(params_for(c.order, ipow(c.p, static_cast<unsigned>(n))));
}

}  // namespace maxab
