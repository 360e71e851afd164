#pragma once

#include "maxab/cartan.hpp"
#include "maxab/classify.hpp"
#include "maxab/cmcurves.hpp"
#include "maxab/matgroups.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maxab {

enum class GenKind {
  Conj,          ///< c_eps
  Cartan,        ///< c(a, b) with rational a, b
  Literal,       ///< fixed integer matrix
  Scalar,        ///< u * I
  ScalarUnits,   ///< u * I for every unit u
  CartanAll,     ///< the whole Cartan subgroup
  CartanFilter,  ///< Cartan matrices c(a, b) whose residues pass a predicate
  CartanPowers,  ///< k-th powers of Cartan matrices
};

/// Predicate on the residues (a, b) of c(a, b) modulo M = p^n.
using CartanPredicate = std::function<bool(i64 a, i64 b, i64 p, i64 M)>;

/// One symbolic generator (or generator family) of a catalogued image.
struct GenSpec {
  GenKind kind = GenKind::Literal;
  int eps = 1;
  Rational a, b;
  std::array<i64, 4> entries{1, 0, 0, 1};
  i64 scalar = 1;
  int power = 1;
  CartanPredicate filter;
  /// Human-readable form, e.g. "c(1,1)" or "{c(a,b): a = 1 mod 3}".
  std::string text;

  static GenSpec conj(int eps);
  static GenSpec cartan(const Rational& a, const Rational& b);
  static GenSpec literal(i64 e11, i64 e12, i64 e21, i64 e22);
  static GenSpec scalar_of(i64 u);
  static GenSpec scalar_units();
  static GenSpec cartan_all();
  static GenSpec cartan_filter(CartanPredicate pred, std::string description);
  static GenSpec cartan_powers(int k);
};

/// A p-adic Galois image given by generators, with a curve realizing it.
struct ImageCase {
  std::string label;
  CMOrder order;
  i64 p = 2;
  std::vector<GenSpec> recipe;
  RationalCurve witness;
  /// Largest exponent checked by the certificate and degree suites.
  int n_max = 3;
  /// The image is the full preimage of its reduction mod p^k for this k.
  int definition_exponent = 1;
  /// Index in the Cartan normalizer at and past the level of definition.
  int expected_index = 1;
};

/// Every catalogued image, sorted by label.
const std::vector<ImageCase>& image_catalog();
/// Throws UnsupportedInput for an unknown label.
const ImageCase& find_case(std::string_view label);

/// Recipe generators at modulus p^n, with rational entries reduced.
std::vector<Mat2> materialize_generators(const ImageCase& c, int n);
/// Closure of the recipe generators mod p^n.
FiniteMatGroup materialize(const ImageCase& c, int n);
/// The Cartan normalizer the image sits in.
FiniteMatGroup case_normalizer(const ImageCase& c, int n);

/// Result of one commutator-quotient computation at modulus p^(n+1).
struct BoundStepReport {
  i64 level = 0;
  Mat2 A, B, kappa, Y, Yprime, quotient;
  bool quotient_in_kernel = false;
  bool quotient_nontrivial = false;
  /// kappa is I mod p^kappa_depth; n for a kernel matrix.
  int kappa_depth = 0;

  bool certifies() const noexcept { return quotient_in_kernel && quotient_nontrivial; }
};

/// Y = [A, B], Y' = [A kappa, B kappa] and Y Y'^-1 at the modulus of G_next = p^(n+1).
/// Throws NotInGroup unless A, B lie in G_next and BadKappa unless kappa is
/// an element of G_next congruent to I mod p^n.
BoundStepReport bound_step(const FiniteMatGroup& G_next, const Mat2& A, const Mat2& B, const Mat2& kappa);

/// As bound_step, with kappa only required to be I mod p^depth (0 <= depth <= n).
/// Any kappa in G_next keeps Y and Y' inside G', so the certificate stays sound.
BoundStepReport bound_step_deep(const FiniteMatGroup& G_next, const Mat2& A, const Mat2& B, const Mat2& kappa,
                                int depth);

enum class CertificateKind { Kernel, Deep, None };
std::string_view certificate_kind_name(CertificateKind k) noexcept;

/// Outcome of the commutator-quotient search for the step p^n -> p^(n+1).
struct StepCertificate {
  std::string label;
  i64 p = 2;
  int n = 1;
  std::size_t derived_lower = 0;  ///< |G'| mod p^n
  std::size_t derived_upper = 0;  ///< |G'| mod p^(n+1)
  CertificateKind kind = CertificateKind::None;
  std::optional<BoundStepReport> report;

  std::size_t derived_kernel() const noexcept { return derived_upper / derived_lower; }
  /// A missing certificate is accounted for by a trivial derived kernel or a deep kappa.
  bool explained() const noexcept { return kind != CertificateKind::None || derived_kernel() == 1; }
  /// A certificate never coexists with a trivial derived kernel.
  bool consistent() const noexcept { return kind == CertificateKind::None || derived_kernel() >= std::size_t(p); }
};

/// Tries A, B among the generators of G mod p^(n+1) and kappa among the kernel
/// matrices lying in G; failing that, kappa in G congruent to I mod p^(n-1) or p^(n-2)
/// (depth 0 allows any kappa in G).
StepCertificate certify_step(const ImageCase& c, int n);

/// Closed-form quotients for the diagonal and transposed presentations.
struct SymbolicCheck {
  std::string presentation;  ///< "split" or "nonsplit"
  i64 p = 3;
  int n = 1;
  Rational delta;  ///< nonsplit only
  BoundStepReport report;
  Mat2 expected;
  bool matches = false;
};

/// Split: A = [[0,1],[1,0]], kappa = diag(1, p^n+1), quotient diag(1/(p^n+1), p^n+1).
/// Nonsplit: A = diag(1,-1), kappa = c_ns(1, p^n), quotient c_ns(1, -2p^n/(delta p^2n - 1)).
/// Checked for p in {5, 7}, n in {1, 2} and several B.
std::vector<SymbolicCheck> check_symbolic_quotients();

struct CommutatorRow {
  int n = 1;
  std::size_t order = 0;
  std::size_t derived = 0;
  std::size_t abelianization = 0;
};

/// Brute-force |G|, |G'| and |G|/|G'| for n = 1..n_max.
std::vector<CommutatorRow> commutator_order_table(const ImageCase& c, int n_max);

/// Reduction p^(n+1) -> p^n.
struct LemmaReport {
  std::string label;
  int n = 1;
  bool derived_surjective = false;
  std::size_t derived_kernel = 0;
  /// Checked only past the level of definition.
  std::optional<bool> kernel_equality;
};

/// Throws AssertionFailure tagged "surjectivity", "derived-kernel" or "kernel-equality".
LemmaReport check_reduction_lemmas(const ImageCase& c, int n);

/// Structural facts about the image mod p^n.
struct StructureReport {
  std::string label;
  int n = 1;
  std::size_t order = 0;
  std::size_t index = 0;  ///< in the Cartan normalizer
  /// Reduction of the p^(n+1) image is the p^n image; checked below the case cap.
  std::optional<bool> compatible;
};

/// Throws AssertionFailure tagged "cartan-abelian", "in-normalizer", "index-divides",
/// "expected-index", "derived-in-cartan", "derived-in-sl2" or "compatible-family".
StructureReport check_structure(const ImageCase& c, int n);

struct DegreeReport {
  std::string label;
  int n = 1;
  std::size_t abelianization = 0;
  i64 degree = 0;
  std::string theorem_case;
};

/// |G|/|G'| against the degree of the classified field of the witness. Throws AssertionFailure.
DegreeReport check_degree_identity(const ImageCase& c, const RationalCurve& witness, int n);

struct ConjugacyPair {
  i64 disc1 = 0, disc2 = 0;
  std::optional<Mat2> conjugator;
  bool verified = false;
};

/// Discriminants of the orders whose 2-adic normalizers are checked for conjugacy.
const std::vector<i64>& inert_conjugacy_discs();

/// The Cartan normalizer mod 16 for the order of discriminant disc (-27 is the order of conductor 3).
FiniteMatGroup inert_normalizer_16(i64 disc);

/// Searches for U with U N(disc1) U^-1 = N(disc2) at modulus 16.
ConjugacyPair conjugacy_pair(i64 disc1, i64 disc2);

/// All pairs among inert_conjugacy_discs(). Throws AssertionFailure listing failures.
std::vector<ConjugacyPair> check_inert_conjugacy();

/// One JSON line of a verification report.
struct SuiteLine {
  std::string label;
  int n = 0;
  std::string check;
  bool pass = false;
  std::string json;
};

struct SuiteResult {
  std::vector<SuiteLine> lines;
  bool all_pass() const noexcept;
};

/// Suites: "lemmas", "certificates", "theorems", "conjugacy", "all". max_n = 0
/// uses each case's own cap. Lines are sorted by label, n and check.
SuiteResult run_suite(std::string_view suite, int max_n = 0, int jobs = 1);

/// The suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

}  // namespace maxab
