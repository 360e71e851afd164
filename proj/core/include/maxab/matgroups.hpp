#pragma once

#include "maxab/residues.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace maxab {

/// Largest modulus supported by the packed matrix key (entries fit 16 bits).
inline constexpr i64 kMaxMatrixModulus = 65536;

/// 2x2 matrix over Z/MZ, row-major entries reduced into [0, M).
class Mat2 {
 public:
  Mat2() = default;
  Mat2(i64 e11, i64 e12, i64 e21, i64 e22, i64 M);

  static Mat2 identity(i64 M) { return Mat2(1, 0, 0, 1, M); }
  static Mat2 scalar(i64 u, i64 M) { return Mat2(u, 0, 0, u, M); }
  static Mat2 diag(i64 a, i64 b, i64 M) { return Mat2(a, 0, 0, b, M); }

  i64 modulus() const noexcept { return m_; }
  /// Entry at row i, column j (0-based).
  i64 at(int i, int j) const noexcept { return e_[2 * i + j]; }
  ModInt entry(int i, int j) const { return ModInt(at(i, j), m_); }
  std::array<i64, 4> entries() const noexcept { return {e_[0], e_[1], e_[2], e_[3]}; }

  ModInt det() const;
  bool invertible() const;
  bool is_identity() const noexcept { return e_[0] == 1 % m_ && e_[1] == 0 && e_[2] == 0 && e_[3] == 1 % m_; }
  /// True iff this matrix is congruent to I modulo q (q divides M).
  bool is_identity_mod(i64 q) const;

  /// Entrywise reduction to a modulus dividing M.
  Mat2 reduce(i64 target) const;

  /// Packs the entries in lexicographic order; compares like the entry tuple.
  std::uint64_t key() const noexcept {
    return (std::uint64_t(e_[0]) << 48) | (std::uint64_t(e_[1]) << 32) |
           (std::uint64_t(e_[2]) << 16) | std::uint64_t(e_[3]);
  }

  bool operator==(const Mat2& o) const noexcept { return m_ == o.m_ && key() == o.key(); }
  bool operator<(const Mat2& o) const noexcept { return key() < o.key(); }

  std::string to_string() const;

 private:
  std::int32_t e_[4] = {1, 0, 0, 1};
  std::int32_t m_ = 2;
};

Mat2 mat_mul(const Mat2& A, const Mat2& B);
Mat2 mat_inv(const Mat2& A);
/// A B A^-1 B^-1.
Mat2 commutator(const Mat2& A, const Mat2& B);
inline Mat2 operator*(const Mat2& A, const Mat2& B) { return mat_mul(A, B); }

/// Element cap from MAXAB_SIZE_CAP, default 2'000'000.
std::size_t default_size_cap();

/// Enumerated subgroup of GL(2, Z/MZ). Elements are sorted lexicographically.
class FiniteMatGroup {
 public:
  i64 modulus() const noexcept { return m_; }
  const std::vector<Mat2>& generators() const noexcept { return gens_; }
  const std::vector<Mat2>& elements() const noexcept { return elems_; }
  std::size_t order() const noexcept { return elems_.size(); }
  bool contains(const Mat2& x) const;

  /// Same modulus and same element set.
  bool operator==(const FiniteMatGroup& o) const;

 private:
  friend class ClosureBuilder;
  i64 m_ = 2;
  std::vector<Mat2> gens_;
  std::vector<Mat2> elems_;
  std::unordered_set<std::uint64_t> keys_;
};

/// Incremental breadth-first closure. Generators may be added one at a time;
/// each addition extends the current group to the subgroup it generates.
class ClosureBuilder {
 public:
  explicit ClosureBuilder(i64 M, std::size_t cap = default_size_cap());

  /// Returns false (and does nothing) when g already lies in the group.
  bool add_generator(const Mat2& g);
  bool contains(const Mat2& x) const { return keys_.count(x.key()) != 0; }
  std::size_t size() const noexcept { return elems_.size(); }
  const std::vector<Mat2>& generators() const noexcept { return gens_; }

  FiniteMatGroup build() const;

 private:
  void insert(const Mat2& x, std::vector<Mat2>& frontier);

  i64 m_;
  std::size_t cap_;
  std::vector<Mat2> gens_;
  std::vector<Mat2> elems_;
  std::unordered_set<std::uint64_t> keys_;
};

/// Smallest subgroup containing gens. Redundant generators are kept as given.
FiniteMatGroup closure(const std::vector<Mat2>& gens, i64 M, std::size_t cap = default_size_cap());

/// Greedy generating set: scans candidates in order and keeps those not yet generated.
std::vector<Mat2> reduce_generators(const std::vector<Mat2>& candidates, i64 M,
                                    const std::vector<Mat2>& seed = {});

/// Normal closure of the generator-pair commutators.
FiniteMatGroup derived_subgroup(const FiniteMatGroup& G);
/// Closure of all |G|^2 commutators. Reference implementation for small groups.
FiniteMatGroup derived_subgroup_all_pairs(const FiniteMatGroup& G);

FiniteMatGroup reduce_group(const FiniteMatGroup& G, i64 target);
FiniteMatGroup kernel_of_reduction(const FiniteMatGroup& G, i64 target);

/// |G| / |H|, after checking H is a subset of G.
std::size_t subgroup_index(const FiniteMatGroup& H, const FiniteMatGroup& G);
bool is_subgroup(const FiniteMatGroup& H, const FiniteMatGroup& G);

std::size_t abelianization_order(const FiniteMatGroup& G);
bool is_abelian(const FiniteMatGroup& G);

/// Every element of GL(2, Z/MZ), sorted.
std::vector<Mat2> general_linear(i64 M);

/// Some U with U G U^-1 = H, by exhaustive search over GL(2, Z/MZ).
std::optional<Mat2> find_conjugator(const FiniteMatGroup& G, const FiniteMatGroup& H,
                                    i64 max_modulus = 16);

/// Element-set check of U G U^-1 = H.
bool conjugates_onto(const Mat2& U, const FiniteMatGroup& G, const FiniteMatGroup& H);

}  // namespace maxab
