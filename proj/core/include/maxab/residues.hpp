#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace maxab {

using i64 = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Residue class modulo M >= 2, always stored in [0, M).
class ModInt {
 public:
  ModInt(i64 value, i64 modulus);

  i64 value() const noexcept { return value_; }
  i64 modulus() const noexcept { return modulus_; }

  ModInt operator+(const ModInt& o) const;
  ModInt operator-(const ModInt& o) const;
  ModInt operator*(const ModInt& o) const;
  ModInt operator-() const { return ModInt(-value_, modulus_); }
  bool operator==(const ModInt& o) const noexcept = default;

 private:
  i64 value_;
  i64 modulus_;
};

/// Reduce n into [0, M).
inline i64 mod_floor(i64 n, i64 M) noexcept {
  i64 r = n % M;
  return r < 0 ? r + M : r;
}

i64 gcd64(i64 a, i64 b) noexcept;
i64 ipow(i64 base, unsigned exp);

/// Inverse of a unit; throws NonUnit otherwise.
ModInt inv_mod(const ModInt& a);

/// num / den mod M. Throws NonUnit when den is not invertible mod M.
ModInt rational_residue(i64 num, i64 den, i64 M);
ModInt rational_residue(const Rational& q, i64 M);

bool is_prime(i64 n) noexcept;

/// Trial-division factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

/// (p, k) with M = p^k, or nothing if M is not a prime power.
std::optional<std::pair<i64, int>> prime_power(i64 M);

i64 euler_phi(i64 m);

/// Kronecker symbol (a | p) for a prime p.
int kronecker(i64 a, i64 p);

/// Signed squarefree d with n/d a positive square. Throws ZeroInput for 0.
i64 squarefree_part(i64 n);
/// Big-integer variant. Throws UnsupportedInput if the cofactor left after trial
/// division cannot be classified.
BigInt squarefree_part(const BigInt& n);

/// Divide out the largest k-th power (k = 4 or 6); the sign is kept.
i64 power_free_part(i64 n, int k);
BigInt power_free_part(const BigInt& n, int k);

/// True iff n is a perfect square (n >= 0).
bool is_square(const BigInt& n);
bool is_square(i64 n);

/// Fundamental discriminant of Q(sqrt(d)) for squarefree d != 0, 1.
i64 fundamental_discriminant(i64 d);

/// Quadratic field Q(sqrt(d)) by its squarefree representative.
struct QuadDisc {
  i64 d;
  i64 fund_disc;

  /// Builds from any nonzero integer whose squarefree part is not 1.
  static QuadDisc from_integer(i64 n);
  /// Builds from a fundamental discriminant.
  static QuadDisc from_fundamental(i64 D);
};

/// Q(sqrt(d)) inside Q(zeta_m), by the conductor criterion |D| divides m.
bool quad_in_cyclotomic(const QuadDisc& d, i64 m);

/// Squarefree representative of the product class d1*d2 modulo squares.
i64 square_class_product(i64 d1, i64 d2);

}  // namespace maxab
