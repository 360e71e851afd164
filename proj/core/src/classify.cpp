#include "maxab/classify.hpp"

#include "maxab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>

namespace maxab {

namespace {

using json = nlohmann::ordered_json;

bool rep_less(i64 x, i64 y) {
  const i64 ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
  if (ax != ay) return ax < ay;
  return x > y;  // positive first
}

i64 to_i64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
    raise(ErrorCode::UnsupportedInput, std::string(what) + " does not fit in 64 bits");
  return v.convert_to<i64>();
}

/// Quadratic generated by sqrt(n), as a list of at most one fundamental discriminant.
std::vector<i64> quad_of(i64 n) {
  const i64 d = squarefree_part(n);
  if (d == 1) return {};
  return {fundamental_discriminant(d)};
}

bool is_cube(const BigInt& v) {
  BigInt a = boost::multiprecision::abs(v);
  BigInt lo = 0, hi = 1;
  while (hi * hi * hi < a) hi *= 2;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (mid * mid * mid < a) lo = mid + 1;
    else hi = mid;
  }
  return lo * lo * lo == a;
}

bool in(const BigInt& v, std::initializer_list<i64> set) {
  for (i64 x : set)
    if (v == x) return true;
  return false;
}

i64 level_power(i64 p, int n) {
  if (n > 62) raise(ErrorCode::UnsupportedInput, "level exponent too large");
  return ipow(p, static_cast<unsigned>(n));
}

int sextic_index(const BigInt& a, int n) {
  if (n == 1) {
    if (in(a, {1, -27})) return 6;
    if (is_cube(a)) return 3;
    if ((is_square(a) && !in(a, {1, 9})) || (is_square(BigInt(-3 * a)) && !in(a, {-3, -27}))) return 2;
    return 1;
  }
  if (in(a, {1, -3, 9, -27, 81, -243})) return 6;
  if (is_cube(a) || is_cube(BigInt(3 * a)) || is_cube(BigInt(9 * a))) return 3;
  if ((is_square(a) && !in(a, {1, 9, 81})) || (is_square(BigInt(-3 * a)) && !in(a, {-3, -27, -243})))
    return 2;
  return 1;
}

int quartic_index(const BigInt& d) {
  if (in(d, {1, -1, 2, -2, 4, -4, 8, -8})) return 4;
  const BigInt ad = boost::multiprecision::abs(d);
  if (is_square(ad) || (ad % 2 == 0 && is_square(BigInt(ad / 2)))) return 2;
  return 1;
}

}  // namespace

i64 squarefree_of_fundamental(i64 D) { return QuadDisc::from_fundamental(D).d; }

i64 field_degree(const AbelianFieldDesc& F) {
  return euler_phi(F.cyclo_level) * (i64(1) << F.quad_discs.size());
}

AbelianFieldDesc canonicalize(const AbelianFieldDesc& F) {
  i64 m = F.cyclo_level;
  if (m < 1) raise(ErrorCode::UnsupportedInput, "cyclotomic level must be >= 1");
  if (m % 4 == 2) m /= 2;

  // square classes of the quadratic subfields of Q(zeta_m)
  std::vector<i64> span{1};
  auto extend = [&span](i64 g) {
    const std::size_t k = span.size();
    for (std::size_t i = 0; i < k; ++i) span.push_back(square_class_product(span[i], g));
  };
  for (auto [p, e] : factorize(m)) {
    if (p == 2) continue;
    extend(p % 4 == 1 ? p : -p);
  }
  if (m % 4 == 0) extend(-1);
  if (m % 8 == 0) extend(2);

  const std::vector<i64> cyclotomic = span;
  auto in_span = [&span](i64 c) { return std::find(span.begin(), span.end(), c) != span.end(); };
  for (i64 D : F.quad_discs) {
    const i64 d = squarefree_of_fundamental(D);
    if (!in_span(d)) extend(d);
  }

  // Smallest representative of every nontrivial class modulo the cyclotomic part;
  // a greedy pass over them in order picks the same basis for every input.
  std::vector<i64> reps;
  for (i64 c : span) {
    i64 best = c;
    for (i64 s : cyclotomic) {
      const i64 t = square_class_product(c, s);
      if (rep_less(t, best)) best = t;
    }
    if (std::find(cyclotomic.begin(), cyclotomic.end(), c) == cyclotomic.end()) reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end(), rep_less);
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

  AbelianFieldDesc out{m, {}};
  span = cyclotomic;
  for (i64 d : reps) {
    if (in_span(d)) continue;
    out.quad_discs.push_back(fundamental_discriminant(d));
    extend(d);
  }
  std::sort(out.quad_discs.begin(), out.quad_discs.end());
  return out;
}

std::optional<int> predicted_index(const RationalCurve& E, i64 p, int n) {
  if (!is_prime(p) || n < 1) raise(ErrorCode::UnsupportedInput, "need a prime p and n >= 1");
  const CMOrder order = recognize_cm(E);
  const i64 disc = order.disc();
  if (p == 3 && disc == -3) return sextic_index(twist_data(E).alpha, n);
  if (p == 2 && disc == -4) return quartic_index(twist_data(E).d);
  if (p == 2 && (disc == -8 || disc == -16)) {
    const BigInt a = squarefree_part(twist_data(E).alpha);
    return in(a, {1, -1, 2, -2}) ? 2 : 1;
  }
  return std::nullopt;
}

ClassificationReport classify_max_abelian(const RationalCurve& E, i64 p, int n) {
  if (!is_prime(p)) raise(ErrorCode::UnsupportedInput, std::to_string(p) + " is not prime");
  if (n < 1) raise(ErrorCode::UnsupportedInput, "n must be >= 1");

  ClassificationReport r;
  r.curve = E;
  r.order = recognize_cm(E);
  r.p = p;
  r.n = n;
  const i64 disc = r.order.disc();
  const i64 dk = r.order.delta_K;
  const i64 q = level_power(p, n);

  TwistData tw;
  bool have_twist = true;
  try {
    tw = twist_data(E);
    r.alpha = tw.alpha;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedInput) throw;
    have_twist = false;
  }
  auto alpha_class = [&]() -> i64 {
    if (!have_twist) raise(ErrorCode::UnsupportedInput, "twist class too large to reduce");
    return to_i64(squarefree_part(tw.alpha), "alpha");
  };

  AbelianFieldDesc F;
  if (p != 2) {
    if (disc % p != 0) {
      r.theorem_case = "unramified-odd";
      F = {q, {dk}};
    } else if (disc == -3) {
      r.theorem_case = "j0-p3";
      F = {q, quad_of(alpha_class())};
    } else {
      r.theorem_case = "ramified-odd";
      F = {q, quad_of(alpha_class())};
    }
  } else if (disc % 2 != 0) {
    r.theorem_case = "odd-disc-p2";
    F = {q, {dk}};
  } else if (disc == -12 || disc == -28) {
    r.theorem_case = "disc12-28-p2";
    F = n == 1 ? AbelianFieldDesc{1, {-disc}} : AbelianFieldDesc{2 * q, {dk}};
  } else if (disc == -4) {
    r.theorem_case = "j1728-p2";
    if (!have_twist) raise(ErrorCode::UnsupportedInput, "quartic twist too large to reduce");
    const BigInt& d = tw.d;
    const BigInt ad = boost::multiprecision::abs(d);
    if (n == 1) {
      if (d > 0 && is_square(d)) F = {1, {-4}};
      else if (d < 0 && is_square(ad)) F = {1, {}};
      else F = {1, quad_of(to_i64(squarefree_part(BigInt(-d)), "twist"))};
    } else if (n == 2 && ad % 2 == 0 && is_square(BigInt(ad / 2))) {
      // d = +-2 t^2: the image at level 4 has abelianization of order 4
      F = {8, {}};
    } else {
      F = {2 * q, quad_of(alpha_class())};
    }
  } else if (disc == -8 || disc == -16) {
    r.theorem_case = "disc8-16-p2";
    if (n == 1) {
      F = {1, {8}};
    } else {
      const i64 a = alpha_class();
      if (n == 2 && disc == -8 && (a == 1 || a == -1 || a == 2 || a == -2)) F = {16, {}};
      else F = {2 * q, quad_of(a)};
    }
  } else {
    raise(ErrorCode::UnsupportedInput, "no classification branch for discriminant " + std::to_string(disc));
  }

  r.field = canonicalize(F);
  r.degree = field_degree(r.field);
  if (have_twist) r.predicted_index = predicted_index(E, p, n);
  return r;
}

std::string report_to_json(const ClassificationReport& r) {
  json j;
  j["curve"] = {{"A", rational_to_string(r.curve.A)}, {"B", rational_to_string(r.curve.B)}};
  j["order"] = {{"deltaK", r.order.delta_K}, {"f", r.order.f}};
  j["p"] = r.p;
  j["n"] = r.n;
  if (!r.alpha) {
    j["alpha"] = nullptr;
  } else if (*r.alpha <= std::numeric_limits<i64>::max() && *r.alpha >= std::numeric_limits<i64>::min()) {
    j["alpha"] = r.alpha->convert_to<i64>();
  } else {
    j["alpha"] = r.alpha->str();
  }
  j["field"] = {{"cycloLevel", r.field.cyclo_level}, {"quadDiscs", r.field.quad_discs}};
  j["degree"] = r.degree;
  if (r.predicted_index) j["predictedIndex"] = *r.predicted_index;
  else j["predictedIndex"] = nullptr;
  j["theoremCase"] = r.theorem_case;
  return j.dump();
}

ClassificationReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::UnsupportedInput, std::string("malformed report JSON: ") + e.what());
  }
  try {
    ClassificationReport r;
    r.curve.A = parse_rational(j.at("curve").at("A").get<std::string>());
    r.curve.B = parse_rational(j.at("curve").at("B").get<std::string>());
    r.order = {j.at("order").at("deltaK").get<i64>(), j.at("order").at("f").get<i64>()};
    r.p = j.at("p").get<i64>();
    r.n = j.at("n").get<int>();
    const auto& a = j.at("alpha");
    if (a.is_string()) r.alpha = BigInt(a.get<std::string>());
    else if (!a.is_null()) r.alpha = BigInt(a.get<i64>());
    r.field.cyclo_level = j.at("field").at("cycloLevel").get<i64>();
    r.field.quad_discs = j.at("field").at("quadDiscs").get<std::vector<i64>>();
    r.degree = j.at("degree").get<i64>();
    if (!j.at("predictedIndex").is_null()) r.predicted_index = j.at("predictedIndex").get<int>();
    r.theorem_case = j.at("theoremCase").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    raise(ErrorCode::UnsupportedInput, std::string("report JSON missing fields: ") + e.what());
  }
}

std::string render_text(const ClassificationReport& r) {
  const AbelianFieldDesc& F = r.field;
  const std::string deg = ", degree " + std::to_string(r.degree);
  const i64 dk = r.order.delta_K;
  const std::string kname = "K = Q(sqrt(" + std::to_string(squarefree_of_fundamental(dk)) + "))";
  const AbelianFieldDesc kfield = canonicalize({F.cyclo_level, {dk}});
  if (F == kfield && !kfield.quad_discs.empty()) {
    if (F.cyclo_level == 1) return "M = K, " + kname + deg;
    return "M = K(zeta_" + std::to_string(F.cyclo_level) + "), " + kname + deg;
  }
  std::vector<std::string> parts;
  if (F.cyclo_level > 1) parts.push_back("zeta_" + std::to_string(F.cyclo_level));
  for (i64 D : F.quad_discs) parts.push_back("sqrt(" + std::to_string(squarefree_of_fundamental(D)) + ")");
  if (parts.empty()) return "M = Q" + deg;
  std::string s = "M = Q(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + ")" + deg;
}

}  // namespace maxab
