#pragma once

#include "maxab/matgroups.hpp"
#include "maxab/residues.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace maxab {

/// Imaginary quadratic order of discriminant delta_K * f^2.
struct CMOrder {
  i64 delta_K = -3;
  i64 f = 1;

  i64 disc() const noexcept { return delta_K * f * f; }
  bool operator==(const CMOrder&) const = default;
};

enum class Flavor { Ramified, Split, Inert };

std::string_view flavor_name(Flavor f) noexcept;

/// Constants (delta, phi) shaping the Cartan matrices at modulus M.
struct CartanParams {
  ModInt delta;
  ModInt phi;
  i64 modulus;
  /// Set when M is a prime power.
  std::optional<Flavor> flavor;
};

/// delta = disc/4, phi = 0 when disc = 0 mod 4 or M is odd;
/// otherwise delta = (delta_K - 1)/4 * f^2 and phi = f.
CartanParams params_for(const CMOrder& order, i64 M);

/// Parameters from an explicit (possibly rational) delta and an integer phi.
CartanParams make_params(const Rational& delta, i64 phi, i64 M);

Flavor splitting_type(const CMOrder& order, i64 p);

/// [[a + b*phi, b], [delta*b, a]]. Throws NonUnitDet if the determinant is not a unit.
Mat2 cartan_matrix(const CartanParams& params, const ModInt& a, const ModInt& b);
Mat2 cartan_matrix(const CartanParams& params, i64 a, i64 b);
Mat2 cartan_matrix(const CartanParams& params, const Rational& a, const Rational& b);

/// [[-eps, 0], [phi, eps]].
Mat2 conj_matrix(const CartanParams& params, int eps);

/// All Cartan matrices with unit determinant, sorted.
std::vector<Mat2> cartan_elements(const CartanParams& params);

/// Cartan subgroup, enumerated directly from its (a, b) description.
FiniteMatGroup build_cartan(const CartanParams& params);
/// Closure of the Cartan subgroup together with c_1.
FiniteMatGroup build_normalizer(const CartanParams& params);

/// A small generating set of the Cartan subgroup.
std::vector<Mat2> cartan_generators(const CartanParams& params);

/// Closed-form Cartan order at p^n for each flavor.
i64 expected_cartan_order(Flavor flavor, i64 p, int n);

/// The p^2 matrices I + p^n [[k1 + phi*k2, k2], [delta*k2, k1]] at modulus p^(n+1).
std::vector<Mat2> kernel_matrices(const CartanParams& params);

// Diagonal and transposed presentations for odd p.

/// diag(a, b).
Mat2 c_sp(const Rational& a, const Rational& b, i64 M);
/// [[a, delta*b], [b, a]].
Mat2 c_ns(const Rational& a, const Rational& b, const Rational& delta, i64 M);

FiniteMatGroup split_cartan(i64 p, int n);
/// Adjoins [[0,1],[1,0]].
FiniteMatGroup split_normalizer(i64 p, int n);
/// Throws BadDelta when delta is a square (or not a unit) mod p.
FiniteMatGroup nonsplit_cartan(i64 p, int n, const Rational& delta);
/// Adjoins diag(1, -1).
FiniteMatGroup nonsplit_normalizer(i64 p, int n, const Rational& delta);

/// diag(1 + p^n k1, 1 + p^n k2) at modulus p^(n+1).
std::vector<Mat2> split_kernel_matrices(i64 p, int n);
/// I + p^n [[k1, delta*k2], [k2, k1]] at modulus p^(n+1).
std::vector<Mat2> nonsplit_kernel_matrices(i64 p, int n, const Rational& delta);

}  // namespace maxab
