#include "maxab/residues.hpp"

#include "maxab/errors.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace maxab {

namespace {

i64 checked_modulus(i64 m) {
  if (m < 2) raise(ErrorCode::UnsupportedInput, "modulus must be >= 2, got " + std::to_string(m));
  return m;
}

i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

// Trial division bound for big-integer squarefree reduction.
constexpr i64 kTrialBound = 1000000;

}  // namespace

ModInt::ModInt(i64 value, i64 modulus)
    : value_(mod_floor(value, checked_modulus(modulus))), modulus_(modulus) {}

ModInt ModInt::operator+(const ModInt& o) const {
  if (o.modulus_ != modulus_) raise(ErrorCode::ModulusMismatch, "ModInt moduli differ");
  return ModInt(value_ + o.value_, modulus_);
}

ModInt ModInt::operator-(const ModInt& o) const {
  if (o.modulus_ != modulus_) raise(ErrorCode::ModulusMismatch, "ModInt moduli differ");
  return ModInt(value_ - o.value_, modulus_);
}

ModInt ModInt::operator*(const ModInt& o) const {
  if (o.modulus_ != modulus_) raise(ErrorCode::ModulusMismatch, "ModInt moduli differ");
  return ModInt(mulmod(value_, o.value_, modulus_), modulus_);
}

i64 gcd64(i64 a, i64 b) noexcept {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 ipow(i64 base, unsigned exp) {
  i64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && std::llabs(r) > std::numeric_limits<i64>::max() / std::llabs(base))
      raise(ErrorCode::UnsupportedInput, "integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

ModInt inv_mod(const ModInt& a) {
  // extended Euclid on (value, modulus)
  i64 old_r = a.value(), r = a.modulus();
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    raise(ErrorCode::NonUnit, std::to_string(a.value()) + " is not a unit mod " +
                                  std::to_string(a.modulus()));
  return ModInt(old_s, a.modulus());
}

ModInt rational_residue(i64 num, i64 den, i64 M) {
  if (den == 0) raise(ErrorCode::NonUnit, "zero denominator");
  const i64 g = gcd64(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  ModInt d(den, M);
  if (gcd64(d.value(), M) != 1)
    raise(ErrorCode::NonUnit, "denominator " + std::to_string(den) + " not invertible mod " +
                                  std::to_string(M));
  return ModInt(num, M) * inv_mod(d);
}

ModInt rational_residue(const Rational& q, i64 M) {
  BigInt num = boost::multiprecision::numerator(q) % M;
  BigInt den = boost::multiprecision::denominator(q) % M;
  return rational_residue(num.convert_to<i64>(), den.convert_to<i64>(), M);
}

bool is_prime(i64 n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n == 0) raise(ErrorCode::ZeroInput, "cannot factor 0");
  std::vector<std::pair<i64, int>> out;
  i64 m = n < 0 ? -n : n;
  for (i64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::optional<std::pair<i64, int>> prime_power(i64 M) {
  if (M < 2) return std::nullopt;
  auto f = factorize(M);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

i64 euler_phi(i64 m) {
  if (m < 1) raise(ErrorCode::UnsupportedInput, "euler_phi needs m >= 1");
  i64 r = m;
  for (auto [p, e] : factorize(m)) r = r / p * (p - 1);
  return r;
}

int kronecker(i64 a, i64 p) {
  if (!is_prime(p)) raise(ErrorCode::UnsupportedInput, "kronecker symbol needs a prime");
  if (p == 2) {
    if (a % 2 == 0) return 0;
    i64 r = mod_floor(a, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  i64 r = mod_floor(a, p);
  if (r == 0) return 0;
  // Euler's criterion
  i64 e = (p - 1) / 2, acc = 1, b = r;
  while (e > 0) {
    if (e & 1) acc = mulmod(acc, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

i64 squarefree_part(i64 n) {
  if (n == 0) raise(ErrorCode::ZeroInput, "squarefree_part of 0");
  i64 out = n < 0 ? -1 : 1;
  for (auto [p, e] : factorize(n))
    if (e % 2 == 1) out *= p;
  return out;
}

bool is_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

bool is_square(i64 n) { return is_square(BigInt(n)); }

BigInt squarefree_part(const BigInt& n) {
  if (n == 0) raise(ErrorCode::ZeroInput, "squarefree_part of 0");
  if (boost::multiprecision::abs(n) <= std::numeric_limits<i64>::max())
    return BigInt(squarefree_part(n.convert_to<i64>()));
  BigInt m = boost::multiprecision::abs(n);
  BigInt out = n < 0 ? -1 : 1;
  for (i64 p = 2; p <= kTrialBound && BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  if (m == 1) return out;
  // every prime factor of m exceeds the trial bound
  const BigInt bound3 = BigInt(kTrialBound) * kTrialBound * kTrialBound;
  if (m < BigInt(kTrialBound) * kTrialBound) return out * m;  // m is prime
  if (is_square(m)) return out;
  if (m < bound3) return out * m;  // m = q or q*r with distinct primes
  raise(ErrorCode::UnsupportedInput, "integer too large to reduce modulo squares");
}

i64 power_free_part(i64 n, int k) {
  if (n == 0) raise(ErrorCode::ZeroInput, "power_free_part of 0");
  if (k != 4 && k != 6) raise(ErrorCode::UnsupportedInput, "power_free_part supports k = 4 or 6");
  i64 out = n < 0 ? -1 : 1;
  for (auto [p, e] : factorize(n)) out *= ipow(p, static_cast<unsigned>(e % k));
  return out;
}

BigInt power_free_part(const BigInt& n, int k) {
  if (n == 0) raise(ErrorCode::ZeroInput, "power_free_part of 0");
  if (boost::multiprecision::abs(n) <= std::numeric_limits<i64>::max())
    return BigInt(power_free_part(n.convert_to<i64>(), k));
  if (k != 4 && k != 6) raise(ErrorCode::UnsupportedInput, "power_free_part supports k = 4 or 6");
  BigInt m = boost::multiprecision::abs(n);
  BigInt out = n < 0 ? -1 : 1;
  for (i64 p = 2; p <= kTrialBound && BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e % k; ++i) out *= p;
  }
  if (m == 1) return out;
  if (m < BigInt(kTrialBound) * kTrialBound) return out * m;
  raise(ErrorCode::UnsupportedInput, "integer too large to reduce modulo k-th powers");
}

i64 fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) raise(ErrorCode::UnsupportedInput, "no quadratic field for d = " + std::to_string(d));
  return mod_floor(d, 4) == 1 ? d : 4 * d;
}

QuadDisc QuadDisc::from_integer(i64 n) {
  i64 d = squarefree_part(n);
  return QuadDisc{d, fundamental_discriminant(d)};
}

QuadDisc QuadDisc::from_fundamental(i64 D) {
  i64 d = mod_floor(D, 4) == 1 ? D : D / 4;
  if (squarefree_part(d) != d || fundamental_discriminant(d) != D)
    raise(ErrorCode::UnsupportedInput, std::to_string(D) + " is not a fundamental discriminant");
  return QuadDisc{d, D};
}

bool quad_in_cyclotomic(const QuadDisc& d, i64 m) {
  if (m < 1) raise(ErrorCode::UnsupportedInput, "cyclotomic level must be >= 1");
  i64 D = d.fund_disc < 0 ? -d.fund_disc : d.fund_disc;
  return m % D == 0;
}

i64 square_class_product(i64 d1, i64 d2) {
  i64 g = gcd64(d1, d2);
  return squarefree_part((d1 / g) * (d2 / g));
}

}  // namespace maxab
