#include "maxab/cmcurves.hpp"

#include "maxab/errors.hpp"

#include <json.hpp>

#include <cctype>

namespace maxab {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::vector<CMTableRow> make_table() {
  auto row = [](const char* j, i64 dk, i64 f, const char* A, const char* B) {
    return CMTableRow{BigInt(j), CMOrder{dk, f}, BigInt(A), BigInt(B)};
  };
  return {
      row("0", -3, 1, "0", "16"),
      row("54000", -3, 2, "-15", "22"),
      row("-12288000", -3, 3, "-480", "4048"),
      row("1728", -4, 1, "1", "0"),
      row("287496", -4, 2, "-11", "14"),
      row("-3375", -7, 1, "-1715", "33614"),
      row("16581375", -7, 2, "-29155", "1915998"),
      row("8000", -8, 1, "-4320", "96768"),
      row("-32768", -11, 1, "-9504", "365904"),
      row("-884736", -19, 1, "-608", "5776"),
      row("-884736000", -43, 1, "-13760", "621264"),
      row("-147197952000", -67, 1, "-117920", "15585808"),
      row("-262537412640768000", -163, 1, "-34790720", "78984748304"),
  };
}

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt parse_integer(std::string_view s) {
  if (!is_decimal_integer(s))
    raise(ErrorCode::UnsupportedInput, "not a decimal integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

/// Smallest v^k multiple of q that is an integer.
BigInt clear_denominator(const Rational& q, int k) {
  BigInt den = denominator(q), scale = 1;
  for (int i = 0; i < k; ++i) scale *= den;
  return numerator(q) * scale;
}

BigInt quartic_alpha(const BigInt& d) {
  for (int c : {1, -1, 2, -2}) {
    if (d % c != 0) continue;
    BigInt rest = d / c;
    if (!is_square(rest)) continue;
    BigInt t = boost::multiprecision::sqrt(rest);
    if (t != 1 && t != 2) return t;
  }
  return d;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view dtext = text.substr(slash + 1);
  if (!dtext.empty() && dtext.front() == '-')
    raise(ErrorCode::UnsupportedInput, "denominator must be positive: '" + std::string(text) + "'");
  BigInt den = parse_integer(dtext);
  if (den == 0) raise(ErrorCode::ZeroInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

const std::vector<CMTableRow>& cm_table() {
  static const std::vector<CMTableRow> table = make_table();
  return table;
}

std::string cm_table_json() {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : cm_table()) {
    arr.push_back({{"j", r.j.str()},
                   {"deltaK", r.order.delta_K},
                   {"f", r.order.f},
                   {"A", r.A.str()},
                   {"B", r.B.str()}});
  }
  return arr.dump(2) + "\n";
}

std::string_view twist_kind_name(TwistKind k) noexcept {
  switch (k) {
    case TwistKind::Quadratic: return "quadratic";
    case TwistKind::Quartic: return "quartic";
    case TwistKind::Sextic: return "sextic";
  }
  return "unknown";
}

Rational j_invariant(const RationalCurve& E) {
  const Rational a3 = 4 * E.A * E.A * E.A;
  const Rational disc = a3 + 27 * E.B * E.B;
  if (disc == 0) raise(ErrorCode::SingularCurve, "4A^3 + 27B^2 vanishes");
  return 1728 * a3 / disc;
}

CMOrder recognize_cm(const RationalCurve& E) {
  const Rational j = j_invariant(E);
  for (const auto& r : cm_table())
    if (Rational(r.j) == j) return r.order;
  raise(ErrorCode::NotCM, "j = " + rational_to_string(j) + " is not a rational CM j-invariant");
}

RationalCurve table_curve(const CMOrder& order) {
  for (const auto& r : cm_table())
    if (r.order == order) return RationalCurve{Rational(r.A), Rational(r.B)};
  raise(ErrorCode::UnknownOrder, "no reference curve for discriminant " + std::to_string(order.delta_K) +
                                     " and conductor " + std::to_string(order.f));
}

bool has_extra_automorphisms(const CMOrder& order) noexcept {
  return order.disc() == -3 || order.disc() == -4;
}

TwistData twist_factor(const RationalCurve& E) {
  const CMOrder order = recognize_cm(E);
  const RationalCurve base = table_curve(order);
  TwistData t;
  t.base_order = order;
  if (order.disc() == -3) {
    t.kind = TwistKind::Sextic;
    const BigInt B = clear_denominator(E.B, 6);
    const BigInt raw = (B % 16 == 0) ? BigInt(B / 16) : BigInt(4 * B);
    t.d = power_free_part(raw, 6);
  } else if (order.disc() == -4) {
    t.kind = TwistKind::Quartic;
    t.d = power_free_part(clear_denominator(E.A, 4), 4);
  } else {
    t.kind = TwistKind::Quadratic;
    // A = A' d^2 and B = B' d^3 force d = (B A') / (B' A)
    const Rational d = (E.B * base.A) / (base.B * E.A);
    t.d = squarefree_part(BigInt(numerator(d) * denominator(d)));
  }
  t.alpha = t.d;
  return t;
}

TwistData twist_data(const RationalCurve& E) {
  TwistData t = twist_factor(E);
  if (t.kind == TwistKind::Quartic) t.alpha = quartic_alpha(t.d);
  return t;
}

BigInt alpha_of(const RationalCurve& E) { return twist_data(E).alpha; }

}  // namespace maxab
