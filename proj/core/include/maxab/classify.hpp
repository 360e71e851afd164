#pragma once

#include "maxab/cmcurves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace maxab {

/// Compositum of Q(zeta_m) with quadratic fields given by fundamental discriminants.
struct AbelianFieldDesc {
  i64 cyclo_level = 1;
  std::vector<i64> quad_discs;

  bool operator==(const AbelianFieldDesc&) const = default;
};

/// phi(m) * 2^(number of quadratic discriminants). Assumes a canonical descriptor.
i64 field_degree(const AbelianFieldDesc& F);

/// Canonical form: m = 2 mod 4 is halved, quadratics inside Q(zeta_m) are dropped,
/// the rest are reduced modulo the quadratic subfields of Q(zeta_m) and each other,
/// keeping the smallest representative (positive on ties). Discriminants are sorted.
AbelianFieldDesc canonicalize(const AbelianFieldDesc& F);

struct ClassificationReport {
  RationalCurve curve;
  CMOrder order;
  i64 p = 2;
  int n = 1;
  std::optional<BigInt> alpha;
  AbelianFieldDesc field;
  i64 degree = 1;
  std::optional<int> predicted_index;
  /// Which branch of the classification produced the field.
  std::string theorem_case;

  bool operator==(const ClassificationReport&) const = default;
};

/// Maximal abelian subfield of Q(E[p^n]). Throws NotCM or UnsupportedInput.
ClassificationReport classify_max_abelian(const RationalCurve& E, i64 p, int n);

/// Index of the image in the Cartan normalizer, where the twist determines it.
std::optional<int> predicted_index(const RationalCurve& E, i64 p, int n);

std::string report_to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const std::string& text);

/// One-line description such as "M = K(zeta_5), K = Q(sqrt(-7)), degree 8".
std::string render_text(const ClassificationReport& r);

/// Squarefree d with Q(sqrt(d)) of fundamental discriminant D.
i64 squarefree_of_fundamental(i64 D);

}  // namespace maxab
