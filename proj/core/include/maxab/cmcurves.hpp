#pragma once

#include "maxab/cartan.hpp"
#include "maxab/residues.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace maxab {

/// Short Weierstrass curve y^2 = x^3 + A x + B over Q.
struct RationalCurve {
  Rational A;
  Rational B;

  bool operator==(const RationalCurve&) const = default;
};

/// Parses "n" or "n/d" in decimal. Throws UnsupportedInput on malformed text.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

/// One curve per rational CM j-invariant, with its order.
struct CMTableRow {
  BigInt j;
  CMOrder order;
  BigInt A;
  BigInt B;
};

/// The thirteen rational CM j-invariants and their reference curves.
const std::vector<CMTableRow>& cm_table();

/// The table as a JSON array of {j, deltaK, f, A, B}, integers as decimal strings.
std::string cm_table_json();

enum class TwistKind { Quadratic, Quartic, Sextic };
std::string_view twist_kind_name(TwistKind k) noexcept;

struct TwistData {
  CMOrder base_order;
  TwistKind kind = TwistKind::Quadratic;
  /// Squarefree, 4th-power-free or 6th-power-free according to kind.
  BigInt d;
  BigInt alpha;
};

/// 1728 * 4A^3 / (4A^3 + 27B^2). Throws SingularCurve.
Rational j_invariant(const RationalCurve& E);

/// Order of the table row with matching j. Throws NotCM.
CMOrder recognize_cm(const RationalCurve& E);

/// Reference curve for a tabulated order. Throws UnknownOrder.
RationalCurve table_curve(const CMOrder& order);

/// Twist class of E relative to the reference curve; alpha is left equal to d.
TwistData twist_factor(const RationalCurve& E);

/// Twist data with alpha filled in.
TwistData twist_data(const RationalCurve& E);

BigInt alpha_of(const RationalCurve& E);

/// True iff j(E) = 0 or 1728.
bool has_extra_automorphisms(const CMOrder& order) noexcept;

}  // namespace maxab
