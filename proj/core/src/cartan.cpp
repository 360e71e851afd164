#include "maxab/cartan.hpp"

#include "maxab/errors.hpp"

#include <algorithm>
#include <string>

namespace maxab {

namespace {

std::pair<i64, int> require_prime_power(i64 M) {
  auto pp = prime_power(M);
  if (!pp) raise(ErrorCode::UnsupportedInput, std::to_string(M) + " is not a prime power");
  return *pp;
}

void require_odd_prime(i64 p, int n) {
  if (!is_prime(p) || p == 2) raise(ErrorCode::UnsupportedInput, "presentation needs an odd prime");
  if (n < 1) raise(ErrorCode::UnsupportedInput, "level exponent must be >= 1");
}

}  // namespace

std::string_view flavor_name(Flavor f) noexcept {
  switch (f) {
    case Flavor::Ramified: return "ramified";
    case Flavor::Split: return "split";
    case Flavor::Inert: return "inert";
  }
  return "unknown";
}

Flavor splitting_type(const CMOrder& order, i64 p) {
  if (!is_prime(p)) raise(ErrorCode::UnsupportedInput, std::to_string(p) + " is not prime");
  if ((order.delta_K * order.f) % p == 0) return Flavor::Ramified;
  if (p == 2) return mod_floor(order.delta_K, 8) == 1 ? Flavor::Split : Flavor::Inert;
  return kronecker(order.delta_K, p) == 1 ? Flavor::Split : Flavor::Inert;
}

CartanParams params_for(const CMOrder& order, i64 M) {
  const i64 disc = order.disc();
  std::optional<Flavor> flavor;
  if (auto pp = prime_power(M)) flavor = splitting_type(order, pp->first);
  if (mod_floor(disc, 4) == 0 || M % 2 == 1)
    return CartanParams{rational_residue(disc, 4, M), ModInt(0, M), M, flavor};
  const i64 delta = (order.delta_K - 1) / 4 * order.f * order.f;
  return CartanParams{ModInt(delta, M), ModInt(order.f, M), M, flavor};
}

CartanParams make_params(const Rational& delta, i64 phi, i64 M) {
  return CartanParams{rational_residue(delta, M), ModInt(phi, M), M, std::nullopt};
}

Mat2 cartan_matrix(const CartanParams& params, const ModInt& a, const ModInt& b) {
  const i64 M = params.modulus;
  if (a.modulus() != M || b.modulus() != M)
    raise(ErrorCode::ModulusMismatch, "Cartan coordinates at the wrong modulus");
  const ModInt top = a + b * params.phi;
  Mat2 m(top.value(), b.value(), (params.delta * b).value(), a.value(), M);
  if (!m.invertible()) raise(ErrorCode::NonUnitDet, "Cartan matrix " + m.to_string() + " has non-unit determinant");
  return m;
}

Mat2 cartan_matrix(const CartanParams& params, i64 a, i64 b) {
  return cartan_matrix(params, ModInt(a, params.modulus), ModInt(b, params.modulus));
}

Mat2 cartan_matrix(const CartanParams& params, const Rational& a, const Rational& b) {
  return cartan_matrix(params, rational_residue(a, params.modulus), rational_residue(b, params.modulus));
}

Mat2 conj_matrix(const CartanParams& params, int eps) {
  if (eps != 1 && eps != -1) raise(ErrorCode::UnsupportedInput, "eps must be 1 or -1");
  return Mat2(-eps, 0, params.phi.value(), eps, params.modulus);
}

std::vector<Mat2> cartan_elements(const CartanParams& params) {
  const i64 M = params.modulus;
  const i64 delta = params.delta.value(), phi = params.phi.value();
  std::vector<Mat2> out;
  for (i64 a = 0; a < M; ++a)
    for (i64 b = 0; b < M; ++b) {
      // det = a(a + b phi) - delta b^2
      const i64 det = mod_floor(a * mod_floor(a + b * phi, M) - mod_floor(delta * b, M) * b, M);
      if (gcd64(det, M) == 1) out.emplace_back(a + b * phi, b, delta * b, a, M);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mat2> cartan_generators(const CartanParams& params) {
  return reduce_generators(cartan_elements(params), params.modulus);
}

FiniteMatGroup build_cartan(const CartanParams& params) {
  const auto elems = cartan_elements(params);
  ClosureBuilder b(params.modulus);
  for (const Mat2& x : elems) b.add_generator(x);
  FiniteMatGroup C = b.build();
  if (C.order() != elems.size())
    raise(ErrorCode::AssertionFailure, "Cartan matrices are not closed under multiplication");
  return C;
}

FiniteMatGroup build_normalizer(const CartanParams& params) {
  ClosureBuilder b(params.modulus);
  for (const Mat2& g : cartan_generators(params)) b.add_generator(g);
  b.add_generator(conj_matrix(params, 1));
  return b.build();
}

i64 expected_cartan_order(Flavor flavor, i64 p, int n) {
  if (!is_prime(p) || n < 1) raise(ErrorCode::UnsupportedInput, "expected_cartan_order needs a prime and n >= 1");
  switch (flavor) {
    case Flavor::Ramified: return ipow(p, 2 * n - 1) * (p - 1);
    case Flavor::Split: return ipow(p, 2 * (n - 1)) * (p - 1) * (p - 1);
    case Flavor::Inert: return ipow(p, 2 * (n - 1)) * (p * p - 1);
  }
  return 0;
}

std::vector<Mat2> kernel_matrices(const CartanParams& params) {
  const i64 M = params.modulus;
  auto [p, k] = require_prime_power(M);
  if (k < 2) raise(ErrorCode::BadTarget, "kernel matrices need modulus p^(n+1) with n >= 1");
  const i64 q = M / p;  // p^n
  const i64 delta = params.delta.value(), phi = params.phi.value();
  std::vector<Mat2> out;
  for (i64 k1 = 0; k1 < p; ++k1)
    for (i64 k2 = 0; k2 < p; ++k2)
      out.emplace_back(1 + q * (k1 + phi * k2), q * k2, q * mod_floor(delta * k2, M), 1 + q * k1, M);
  return out;
}

Mat2 c_sp(const Rational& a, const Rational& b, i64 M) {
  return Mat2::diag(rational_residue(a, M).value(), rational_residue(b, M).value(), M);
}

Mat2 c_ns(const Rational& a, const Rational& b, const Rational& delta, i64 M) {
  const ModInt ar = rational_residue(a, M), br = rational_residue(b, M), dr = rational_residue(delta, M);
  return Mat2(ar.value(), (dr * br).value(), br.value(), ar.value(), M);
}

FiniteMatGroup split_cartan(i64 p, int n) {
  require_odd_prime(p, n);
  const i64 M = ipow(p, n);
  ClosureBuilder b(M);
  for (i64 a = 1; a < M; ++a) {
    if (a % p == 0) continue;
    b.add_generator(Mat2::diag(a, 1, M));
    b.add_generator(Mat2::diag(1, a, M));
  }
  return b.build();
}

FiniteMatGroup split_normalizer(i64 p, int n) {
  FiniteMatGroup C = split_cartan(p, n);
  std::vector<Mat2> gens = C.generators();
  gens.emplace_back(0, 1, 1, 0, C.modulus());
  return closure(gens, C.modulus());
}

FiniteMatGroup nonsplit_cartan(i64 p, int n, const Rational& delta) {
  require_odd_prime(p, n);
  const ModInt dp = rational_residue(delta, p);
  if (dp.value() == 0 || kronecker(dp.value(), p) == 1)
    raise(ErrorCode::BadDelta, "delta must be a non-square unit mod " + std::to_string(p));
  const i64 M = ipow(p, n);
  const i64 dm = rational_residue(delta, M).value();
  std::vector<Mat2> elems;
  for (i64 a = 0; a < M; ++a)
    for (i64 b = 0; b < M; ++b)
      if (gcd64(mod_floor(a * a - mod_floor(dm * b, M) * b, M), M) == 1) elems.emplace_back(a, dm * b, b, a, M);
  ClosureBuilder bld(M);
  for (const Mat2& x : elems) bld.add_generator(x);
  return bld.build();
}

FiniteMatGroup nonsplit_normalizer(i64 p, int n, const Rational& delta) {
  FiniteMatGroup C = nonsplit_cartan(p, n, delta);
  std::vector<Mat2> gens = C.generators();
  gens.push_back(Mat2::diag(1, -1, C.modulus()));
  return closure(gens, C.modulus());
}

std::vector<Mat2> split_kernel_matrices(i64 p, int n) {
  require_odd_prime(p, n);
  const i64 q = ipow(p, n), M = q * p;
  std::vector<Mat2> out;
  for (i64 k1 = 0; k1 < p; ++k1)
    for (i64 k2 = 0; k2 < p; ++k2) out.push_back(Mat2::diag(1 + q * k1, 1 + q * k2, M));
  return out;
}

std::vector<Mat2> nonsplit_kernel_matrices(i64 p, int n, const Rational& delta) {
  require_odd_prime(p, n);
  const i64 q = ipow(p, n), M = q * p;
  const i64 dm = rational_residue(delta, M).value();
  std::vector<Mat2> out;
  for (i64 k1 = 0; k1 < p; ++k1)
    for (i64 k2 = 0; k2 < p; ++k2) out.emplace_back(1 + q * k1, q * mod_floor(dm * k2, M), q * k2, 1 + q * k1, M);
  return out;
}

}  // namespace maxab
