#include "maxab/matgroups.hpp"

#include "maxab/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace maxab {

namespace {

void require_same_modulus(const Mat2& A, const Mat2& B) {
  if (A.modulus() != B.modulus())
    raise(ErrorCode::ModulusMismatch, "matrix moduli differ: " + std::to_string(A.modulus()) +
                                          " vs " + std::to_string(B.modulus()));
}

void require_divides(i64 target, i64 M) {
  if (target < 2 || M % target != 0)
    raise(ErrorCode::BadTarget, std::to_string(target) + " does not divide modulus " + std::to_string(M));
}

}  // namespace

Mat2::Mat2(i64 e11, i64 e12, i64 e21, i64 e22, i64 M) {
  if (M < 2 || M > kMaxMatrixModulus)
    raise(ErrorCode::UnsupportedInput, "matrix modulus out of range: " + std::to_string(M));
  e_[0] = static_cast<std::int32_t>(mod_floor(e11, M));
  e_[1] = static_cast<std::int32_t>(mod_floor(e12, M));
  e_[2] = static_cast<std::int32_t>(mod_floor(e21, M));
  e_[3] = static_cast<std::int32_t>(mod_floor(e22, M));
  m_ = static_cast<std::int32_t>(M);
}

ModInt Mat2::det() const {
  return ModInt(i64(e_[0]) * e_[3] - i64(e_[1]) * e_[2], m_);
}

bool Mat2::invertible() const { return gcd64(det().value(), m_) == 1; }

bool Mat2::is_identity_mod(i64 q) const {
  if (q < 1 || m_ % q != 0)
    raise(ErrorCode::BadTarget, std::to_string(q) + " does not divide modulus " + std::to_string(m_));
  return (e_[0] - 1) % q == 0 && e_[1] % q == 0 && e_[2] % q == 0 && (e_[3] - 1) % q == 0;
}

Mat2 Mat2::reduce(i64 target) const {
  require_divides(target, m_);
  return Mat2(e_[0], e_[1], e_[2], e_[3], target);
}

std::string Mat2::to_string() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) +
         "," + std::to_string(e_[3]) + "]] mod " + std::to_string(m_);
}

Mat2 mat_mul(const Mat2& A, const Mat2& B) {
  require_same_modulus(A, B);
  const i64 M = A.modulus();
  return Mat2(A.at(0, 0) * B.at(0, 0) + A.at(0, 1) * B.at(1, 0),
              A.at(0, 0) * B.at(0, 1) + A.at(0, 1) * B.at(1, 1),
              A.at(1, 0) * B.at(0, 0) + A.at(1, 1) * B.at(1, 0),
              A.at(1, 0) * B.at(0, 1) + A.at(1, 1) * B.at(1, 1), M);
}

Mat2 mat_inv(const Mat2& A) {
  const i64 M = A.modulus();
  ModInt d = A.det();
  if (gcd64(d.value(), M) != 1) raise(ErrorCode::Singular, "matrix " + A.to_string() + " is singular");
  const i64 di = inv_mod(d).value();
  return Mat2(A.at(1, 1) * di, -A.at(0, 1) * di, -A.at(1, 0) * di, A.at(0, 0) * di, M);
}

Mat2 commutator(const Mat2& A, const Mat2& B) {
  require_same_modulus(A, B);
  return A * B * mat_inv(A) * mat_inv(B);
}

std::size_t default_size_cap() {
  constexpr std::size_t kDefault = 2000000;
  const char* env = std::getenv("MAXAB_SIZE_CAP");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefault;
  return static_cast<std::size_t>(v);
}

bool FiniteMatGroup::contains(const Mat2& x) const {
  return x.modulus() == m_ && keys_.count(x.key()) != 0;
}

bool FiniteMatGroup::operator==(const FiniteMatGroup& o) const {
  return m_ == o.m_ && elems_ == o.elems_;
}

ClosureBuilder::ClosureBuilder(i64 M, std::size_t cap) : m_(M), cap_(cap) {
  Mat2 id = Mat2::identity(M);
  elems_.push_back(id);
  keys_.insert(id.key());
}

void ClosureBuilder::insert(const Mat2& x, std::vector<Mat2>& frontier) {
  if (!keys_.insert(x.key()).second) return;
  if (elems_.size() >= cap_)
    raise(ErrorCode::SizeLimitExceeded,
          "group exceeds " + std::to_string(cap_) + " elements at modulus " + std::to_string(m_));
  elems_.push_back(x);
  frontier.push_back(x);
}

bool ClosureBuilder::add_generator(const Mat2& g) {
  if (g.modulus() != m_) raise(ErrorCode::ModulusMismatch, "generator modulus differs from group modulus");
  if (!g.invertible()) raise(ErrorCode::SingularGenerator, "generator " + g.to_string() + " is singular");
  if (contains(g)) return false;
  gens_.push_back(g);
  // Old elements are already closed under the old generators, so only the new
  // generator needs to act on them; fresh elements see every generator.
  std::vector<Mat2> frontier;
  const std::size_t old = elems_.size();
  for (std::size_t i = 0; i < old; ++i) insert(elems_[i] * g, frontier);
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const Mat2& x : frontier)
      for (const Mat2& s : gens_) insert(x * s, next);
    frontier.swap(next);
  }
  return true;
}

FiniteMatGroup ClosureBuilder::build() const {
  FiniteMatGroup G;
  G.m_ = m_;
  G.gens_ = gens_;
  G.elems_ = elems_;
  std::sort(G.elems_.begin(), G.elems_.end());
  G.keys_ = keys_;
  return G;
}

FiniteMatGroup closure(const std::vector<Mat2>& gens, i64 M, std::size_t cap) {
  ClosureBuilder b(M, cap);
  for (const Mat2& g : gens) b.add_generator(g);
  FiniteMatGroup G = b.build();
  return G;
}

std::vector<Mat2> reduce_generators(const std::vector<Mat2>& candidates, i64 M,
                                    const std::vector<Mat2>& seed) {
  ClosureBuilder b(M);
  for (const Mat2& g : seed) b.add_generator(g);
  for (const Mat2& g : candidates) b.add_generator(g);
  return b.generators();
}

FiniteMatGroup derived_subgroup(const FiniteMatGroup& G) {
  const auto& gens = G.generators();
  ClosureBuilder b(G.modulus());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) b.add_generator(commutator(gens[i], gens[j]));
  // normal closure: conjugate every subgroup generator by every generator of G
  std::vector<Mat2> ginv;
  for (const Mat2& g : gens) ginv.push_back(mat_inv(g));
  for (std::size_t k = 0; k < b.generators().size(); ++k) {
    const Mat2 h = b.generators()[k];
    for (std::size_t i = 0; i < gens.size(); ++i) b.add_generator(gens[i] * h * ginv[i]);
  }
  return b.build();
}

FiniteMatGroup derived_subgroup_all_pairs(const FiniteMatGroup& G) {
  ClosureBuilder b(G.modulus());
  for (const Mat2& x : G.elements())
    for (const Mat2& y : G.elements()) b.add_generator(commutator(x, y));
  return b.build();
}

FiniteMatGroup reduce_group(const FiniteMatGroup& G, i64 target) {
  require_divides(target, G.modulus());
  std::vector<Mat2> gens;
  for (const Mat2& g : G.generators()) gens.push_back(g.reduce(target));
  FiniteMatGroup image = closure(gens, target);
  // the image of the element set must coincide with the generated group
  for (const Mat2& x : G.elements())
    if (!image.contains(x.reduce(target)))
      raise(ErrorCode::AssertionFailure, "reduction image is not generated by reduced generators");
  return image;
}

FiniteMatGroup kernel_of_reduction(const FiniteMatGroup& G, i64 target) {
  if (target == G.modulus()) return closure({}, G.modulus());
  require_divides(target, G.modulus());
  ClosureBuilder b(G.modulus());
  for (const Mat2& x : G.elements())
    if (x.is_identity_mod(target)) b.add_generator(x);
  return b.build();
}

bool is_subgroup(const FiniteMatGroup& H, const FiniteMatGroup& G) {
  if (H.modulus() != G.modulus()) return false;
  for (const Mat2& x : H.elements())
    if (!G.contains(x)) return false;
  return true;
}

std::size_t subgroup_index(const FiniteMatGroup& H, const FiniteMatGroup& G) {
  if (H.modulus() != G.modulus()) raise(ErrorCode::ModulusMismatch, "subgroup_index across moduli");
  if (!is_subgroup(H, G)) raise(ErrorCode::NotSubgroup, "H is not contained in G");
  return G.order() / H.order();
}

std::size_t abelianization_order(const FiniteMatGroup& G) {
  return G.order() / derived_subgroup(G).order();
}

bool is_abelian(const FiniteMatGroup& G) {
  const auto& gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
  return true;
}

std::vector<Mat2> general_linear(i64 M) {
  std::vector<Mat2> out;
  for (i64 a = 0; a < M; ++a)
    for (i64 b = 0; b < M; ++b)
      for (i64 c = 0; c < M; ++c)
        for (i64 d = 0; d < M; ++d)
          if (gcd64(a * d - b * c, M) == 1) out.emplace_back(a, b, c, d, M);
  return out;
}

bool conjugates_onto(const Mat2& U, const FiniteMatGroup& G, const FiniteMatGroup& H) {
  if (G.modulus() != H.modulus() || G.order() != H.order()) return false;
  const Mat2 Ui = mat_inv(U);
  for (const Mat2& x : G.elements())
    if (!H.contains(U * x * Ui)) return false;
  return true;
}

std::optional<Mat2> find_conjugator(const FiniteMatGroup& G, const FiniteMatGroup& H, i64 max_modulus) {
  if (G.modulus() != H.modulus()) raise(ErrorCode::ModulusMismatch, "conjugacy across moduli");
  if (G.modulus() > max_modulus)
    raise(ErrorCode::SizeLimitExceeded,
          "conjugacy search capped at modulus " + std::to_string(max_modulus));
  if (G.order() != H.order()) return std::nullopt;
  for (const Mat2& U : general_linear(G.modulus())) {
    const Mat2 Ui = mat_inv(U);
    bool ok = true;
    for (const Mat2& g : G.generators())
      if (!H.contains(U * g * Ui)) {
        ok = false;
        break;
      }
    // generators landing in H give U G U^-1 inside H; equal orders close the gap
    if (ok && conjugates_onto(U, G, H)) return U;
  }
  return std::nullopt;
}

}  // namespace maxab
