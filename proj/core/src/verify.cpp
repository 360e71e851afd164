#include "maxab/verify.hpp"

#include "maxab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace maxab {

namespace {

using json = nlohmann::ordered_json;

i64 level(i64 p, int n) { return ipow(p, static_cast<unsigned>(n)); }

/// An image and its derived subgroup at one level.
struct LevelData {
  FiniteMatGroup G;
  FiniteMatGroup D;
};

/// Process-wide memo of materialized images; concurrent callers share one computation.
class GroupCache {
 public:
  std::shared_ptr<const LevelData> get(const ImageCase& c, int n) {
    return lookup(c.label + "#" + std::to_string(n), [&] {
      auto d = std::make_shared<LevelData>();
      d->G = materialize(c, n);
      d->D = derived_subgroup(d->G);
      return d;
    });
  }

  std::shared_ptr<const LevelData> normalizer(const ImageCase& c, int n) {
    const std::string key = "N#" + std::to_string(c.order.delta_K) + "#" + std::to_string(c.order.f) + "#" +
                            std::to_string(c.p) + "#" + std::to_string(n);
    return lookup(key, [&] {
      auto d = std::make_shared<LevelData>();
      d->G = case_normalizer(c, n);
      return d;
    });
  }

 private:
  using Future = std::shared_future<std::shared_ptr<const LevelData>>;

  template <class Make>
  std::shared_ptr<const LevelData> lookup(const std::string& key, Make make) {
    std::promise<std::shared_ptr<const LevelData>> promise;
    Future fut;
    bool owner = false;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it == memo_.end()) {
        fut = promise.get_future().share();
        memo_.emplace(key, fut);
        owner = true;
      } else {
        fut = it->second;
      }
    }
    if (owner) {
      try {
        promise.set_value(make());
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard<std::mutex> lock(mu_);
        memo_.erase(key);
      }
    }
    return fut.get();
  }

  std::mutex mu_;
  std::map<std::string, Future> memo_;
};

GroupCache& cache() {
  static GroupCache c;
  return c;
}

[[noreturn]] void fail(const std::string& tag, const ImageCase& c, int n, const std::string& what) {
  raise(ErrorCode::AssertionFailure, "[" + tag + "] " + c.label + " n=" + std::to_string(n) + ": " + what);
}

std::pair<i64, int> step_modulus(const FiniteMatGroup& G_next) {
  auto pp = prime_power(G_next.modulus());
  if (!pp || pp->second < 2) raise(ErrorCode::BadTarget, "bound_step needs a group mod p^(n+1) with n >= 1");
  return *pp;
}

BoundStepReport quotient_report(const FiniteMatGroup& G_next, const Mat2& A, const Mat2& B, const Mat2& kappa,
                                int depth) {
  const i64 M = G_next.modulus();
  const i64 q = M / step_modulus(G_next).first;
  if (A.modulus() != M || B.modulus() != M || kappa.modulus() != M)
    raise(ErrorCode::ModulusMismatch, "bound_step matrices must share the group modulus");
  if (!G_next.contains(A)) raise(ErrorCode::NotInGroup, "A = " + A.to_string() + " is not in the group");
  if (!G_next.contains(B)) raise(ErrorCode::NotInGroup, "B = " + B.to_string() + " is not in the group");
  BoundStepReport r;
  r.level = M;
  r.A = A;
  r.B = B;
  r.kappa = kappa;
  r.kappa_depth = depth;
  r.Y = commutator(A, B);
  r.Yprime = commutator(A * kappa, B * kappa);
  r.quotient = r.Y * mat_inv(r.Yprime);
  r.quotient_in_kernel = r.quotient.is_identity_mod(q);
  r.quotient_nontrivial = !r.quotient.is_identity();
  return r;
}

json mat_json(const Mat2& m) {
  const auto e = m.entries();
  return json::array({e[0], e[1], e[2], e[3]});
}

int case_cap(const ImageCase& c, int max_n) { return max_n > 0 ? std::min(c.n_max, max_n) : c.n_max; }

}  // namespace

BoundStepReport bound_step(const FiniteMatGroup& G_next, const Mat2& A, const Mat2& B, const Mat2& kappa) {
  const auto [p, k] = step_modulus(G_next);
  const i64 q = G_next.modulus() / p;
  if (kappa.modulus() != G_next.modulus() || !kappa.is_identity_mod(q))
    raise(ErrorCode::BadKappa, "kappa = " + kappa.to_string() + " is not I mod " + std::to_string(q));
  if (!G_next.contains(kappa)) raise(ErrorCode::BadKappa, "kappa = " + kappa.to_string() + " is not in the group");
  return quotient_report(G_next, A, B, kappa, k - 1);
}

BoundStepReport bound_step_deep(const FiniteMatGroup& G_next, const Mat2& A, const Mat2& B, const Mat2& kappa,
                                int depth) {
  const auto [p, k] = step_modulus(G_next);
  if (depth < 0 || depth > k - 1) raise(ErrorCode::BadKappa, "kappa depth out of range");
  const i64 q = level(p, depth);
  if (kappa.modulus() != G_next.modulus() || !kappa.is_identity_mod(q))
    raise(ErrorCode::BadKappa, "kappa = " + kappa.to_string() + " is not I mod " + std::to_string(q));
  if (!G_next.contains(kappa)) raise(ErrorCode::BadKappa, "kappa = " + kappa.to_string() + " is not in the group");
  return quotient_report(G_next, A, B, kappa, depth);
}

std::string_view certificate_kind_name(CertificateKind k) noexcept {
  switch (k) {
    case CertificateKind::Kernel: return "kernel";
    case CertificateKind::Deep: return "deep";
    case CertificateKind::None: return "none";
  }
  return "none";
}

StepCertificate certify_step(const ImageCase& c, int n) {
  if (n < 1) raise(ErrorCode::UnsupportedInput, "certificate step needs n >= 1");
  const auto lo = cache().get(c, n);
  const auto hi = cache().get(c, n + 1);
  StepCertificate cert;
  cert.label = c.label;
  cert.p = c.p;
  cert.n = n;
  cert.derived_lower = lo->D.order();
  cert.derived_upper = hi->D.order();

  const FiniteMatGroup& G = hi->G;
  const std::vector<Mat2>& gens = G.generators();
  auto search = [&](const std::vector<Mat2>& kappas, int depth) -> std::optional<BoundStepReport> {
    for (const Mat2& kappa : kappas) {
      if (kappa.is_identity() || !G.contains(kappa)) continue;
      for (const Mat2& A : gens)
        for (const Mat2& B : gens) {
          if (A == B) continue;
          BoundStepReport r = depth == n ? bound_step(G, A, B, kappa) : bound_step_deep(G, A, B, kappa, depth);
          if (r.certifies()) return r;
        }
    }
    return std::nullopt;
  };

  if (auto r = search(kernel_matrices(params_for(c.order, G.modulus())), n)) {
    cert.kind = CertificateKind::Kernel;
    cert.report = r;
    return cert;
  }
  for (int depth = n - 1; depth >= std::max(0, n - 2); --depth) {
    std::vector<Mat2> deep;
    const i64 q = level(c.p, depth);
    for (const Mat2& x : G.elements())
      if (x.is_identity_mod(q)) deep.push_back(x);
    if (auto r = search(deep, depth)) {
      cert.kind = CertificateKind::Deep;
      cert.report = r;
      return cert;
    }
  }
  return cert;
}

std::vector<SymbolicCheck> check_symbolic_quotients() {
  std::vector<SymbolicCheck> out;
  const std::pair<i64, i64> bs[] = {{1, 1}, {2, 1}, {3, 2}};
  for (i64 p : {5, 7}) {
    for (int n : {1, 2}) {
      const i64 q = level(p, n), M = q * p;
      const FiniteMatGroup N = split_normalizer(p, n + 1);
      const Mat2 kappa = c_sp(1, q + 1, M);
      const Mat2 expected = c_sp(Rational(1, q + 1), q + 1, M);
      for (auto [a, b] : bs) {
        const Mat2 B = c_sp(a, b, M);
        if (!B.invertible()) continue;
        SymbolicCheck s;
        s.presentation = "split";
        s.p = p;
        s.n = n;
        s.report = bound_step(N, Mat2(0, 1, 1, 0, M), B, kappa);
        s.expected = expected;
        s.matches = s.report.quotient == expected;
        out.push_back(s);
      }
    }
  }
  // transposed presentation with an inert discriminant at each prime
  const std::pair<i64, Rational> inert[] = {{5, Rational(-7, 4)}, {7, Rational(-1)}};
  for (const auto& [p, delta] : inert) {
    for (int n : {1, 2}) {
      const i64 q = level(p, n), M = q * p;
      const FiniteMatGroup N = nonsplit_normalizer(p, n + 1, delta);
      const Mat2 kappa = c_ns(1, q, delta, M);
      const Rational qq(q);
      const Mat2 expected = c_ns(1, Rational(-2 * q) / (delta * qq * qq - 1), delta, M);
      for (auto [a, b] : bs) {
        const Mat2 B = c_ns(a, b, delta, M);
        if (!B.invertible()) continue;
        SymbolicCheck s;
        s.presentation = "nonsplit";
        s.p = p;
        s.n = n;
        s.delta = delta;
        s.report = bound_step(N, Mat2::diag(1, -1, M), B, kappa);
        s.expected = expected;
        s.matches = s.report.quotient == expected;
        out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<CommutatorRow> commutator_order_table(const ImageCase& c, int n_max) {
  std::vector<CommutatorRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const auto d = cache().get(c, n);
    rows.push_back({n, d->G.order(), d->D.order(), d->G.order() / d->D.order()});
  }
  return rows;
}

LemmaReport check_reduction_lemmas(const ImageCase& c, int n) {
  if (n < 1) raise(ErrorCode::UnsupportedInput, "reduction lemmas need n >= 1");
  const auto lo = cache().get(c, n);
  const auto hi = cache().get(c, n + 1);
  const i64 q = level(c.p, n);
  LemmaReport r;
  r.label = c.label;
  r.n = n;

  r.derived_surjective = reduce_group(hi->D, q) == lo->D;
  if (!r.derived_surjective) fail("surjectivity", c, n, "derived subgroup does not reduce onto the lower level");

  r.derived_kernel = kernel_of_reduction(hi->D, q).order();
  const std::size_t p = static_cast<std::size_t>(c.p);
  if (r.derived_kernel != 1 && r.derived_kernel != p && r.derived_kernel != p * p)
    fail("derived-kernel", c, n, "derived kernel has order " + std::to_string(r.derived_kernel));
  if (r.derived_kernel * lo->D.order() != hi->D.order())
    fail("derived-kernel", c, n, "derived orders do not factor through the kernel");

  if (n >= c.definition_exponent) {
    std::vector<Mat2> expected = kernel_matrices(params_for(c.order, q * c.p));
    std::sort(expected.begin(), expected.end());
    r.kernel_equality = kernel_of_reduction(hi->G, q).elements() == expected;
    if (!*r.kernel_equality) fail("kernel-equality", c, n, "image kernel differs from the Cartan kernel");
  }
  return r;
}

StructureReport check_structure(const ImageCase& c, int n) {
  const auto d = cache().get(c, n);
  const auto N = cache().normalizer(c, n);
  const FiniteMatGroup C = build_cartan(params_for(c.order, level(c.p, n)));
  StructureReport r;
  r.label = c.label;
  r.n = n;
  r.order = d->G.order();

  if (!is_abelian(C)) fail("cartan-abelian", c, n, "Cartan subgroup is not abelian");
  if (!is_subgroup(d->G, N->G)) fail("in-normalizer", c, n, "image is not inside the Cartan normalizer");
  r.index = subgroup_index(d->G, N->G);
  if (r.index > 6 || r.index == 5) fail("index-divides", c, n, "index " + std::to_string(r.index));
  if (n >= c.definition_exponent && r.index != static_cast<std::size_t>(c.expected_index))
    fail("expected-index", c, n,
         "index " + std::to_string(r.index) + ", expected " + std::to_string(c.expected_index));
  for (const Mat2& x : d->D.elements()) {
    if (!C.contains(x)) fail("derived-in-cartan", c, n, x.to_string() + " is not a Cartan matrix");
    if (x.det().value() != 1) fail("derived-in-sl2", c, n, x.to_string() + " has determinant != 1");
  }
  if (n < c.n_max) {
    r.compatible = reduce_group(cache().get(c, n + 1)->G, level(c.p, n)) == d->G;
    if (!*r.compatible) fail("compatible-family", c, n, "reduction from the next level is a different group");
  }
  return r;
}

DegreeReport check_degree_identity(const ImageCase& c, const RationalCurve& witness, int n) {
  const auto d = cache().get(c, n);
  const ClassificationReport cls = classify_max_abelian(witness, c.p, n);
  if (!(cls.order == c.order)) fail("degree", c, n, "witness curve has a different CM order");
  DegreeReport r;
  r.label = c.label;
  r.n = n;
  r.abelianization = d->G.order() / d->D.order();
  r.degree = cls.degree;
  r.theorem_case = cls.theorem_case;
  if (static_cast<i64>(r.abelianization) != r.degree)
    fail("degree", c, n,
         "|G|/|G'| = " + std::to_string(r.abelianization) + " but the field has degree " + std::to_string(r.degree));
  return r;
}

const std::vector<i64>& inert_conjugacy_discs() {
  static const std::vector<i64> discs{-11, -19, -27, -43, -67, -163};
  return discs;
}

FiniteMatGroup inert_normalizer_16(i64 disc) {
  const CMOrder order = disc == -27 ? CMOrder{-3, 3} : CMOrder{disc, 1};
  if (order.disc() != disc || fundamental_discriminant(squarefree_part(order.delta_K)) != order.delta_K)
    raise(ErrorCode::UnsupportedInput, "unsupported discriminant " + std::to_string(disc));
  return build_normalizer(params_for(order, 16));
}

ConjugacyPair conjugacy_pair(i64 disc1, i64 disc2) {
  const FiniteMatGroup G = inert_normalizer_16(disc1), H = inert_normalizer_16(disc2);
  ConjugacyPair r{disc1, disc2, find_conjugator(G, H), false};
  r.verified = r.conjugator && conjugates_onto(*r.conjugator, G, H);
  return r;
}

std::vector<ConjugacyPair> check_inert_conjugacy() {
  const auto& discs = inert_conjugacy_discs();
  std::vector<ConjugacyPair> out;
  std::string failed;
  for (std::size_t i = 0; i < discs.size(); ++i)
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      out.push_back(conjugacy_pair(discs[i], discs[j]));
      if (!out.back().verified)
        failed += " (" + std::to_string(discs[i]) + "," + std::to_string(discs[j]) + ")";
    }
  if (!failed.empty()) raise(ErrorCode::AssertionFailure, "[conjugacy] no conjugator for" + failed);
  return out;
}

bool SuiteResult::all_pass() const noexcept {
  return std::all_of(lines.begin(), lines.end(), [](const SuiteLine& l) { return l.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemmas", "certificates", "theorems", "conjugacy", "all"};
  return names;
}

namespace {

using Task = std::function<std::vector<SuiteLine>()>;

SuiteLine make_line(const std::string& suite, const std::string& check, const std::string& label, int n, bool pass,
                    json data) {
  json j;
  j["suite"] = suite;
  j["check"] = check;
  j["case"] = label;
  j["n"] = n;
  j["pass"] = pass;
  for (auto& [k, v] : data.items()) j[k] = v;
  return SuiteLine{label, n, check, pass, j.dump()};
}

/// Runs fn and turns a thrown Error into a failing line.
Task guarded(std::string suite, std::string check, std::string label, int n,
             std::function<std::vector<SuiteLine>()> fn) {
  return [=]() {
    try {
      return fn();
    } catch (const Error& e) {
      return std::vector<SuiteLine>{make_line(suite, check, label, n, false,
                                              json{{"error", std::string(error_code_name(e.code()))},
                                                   {"message", e.what()}})};
    }
  };
}

void lemma_tasks(std::vector<Task>& tasks, int max_n) {
  for (const ImageCase& c : image_catalog()) {
    const int cap = case_cap(c, max_n);
    const int top = std::max(cap - 1, std::min(c.definition_exponent, cap));
    for (int n = 1; n <= top; ++n)
      tasks.push_back(guarded("lemmas", "reduction", c.label, n, [&c, n] {
        const LemmaReport r = check_reduction_lemmas(c, n);
        json data{{"derivedSurjective", r.derived_surjective}, {"derivedKernel", r.derived_kernel}};
        data["kernelEquality"] = r.kernel_equality ? json(*r.kernel_equality) : json(nullptr);
        return std::vector<SuiteLine>{make_line("lemmas", "reduction", c.label, n, true, data)};
      }));
    for (int n = 1; n <= cap; ++n)
      tasks.push_back(guarded("lemmas", "structure", c.label, n, [&c, n] {
        const StructureReport r = check_structure(c, n);
        json data{{"order", r.order}, {"index", r.index}};
        data["compatible"] = r.compatible ? json(*r.compatible) : json(nullptr);
        return std::vector<SuiteLine>{make_line("lemmas", "structure", c.label, n, true, data)};
      }));
  }
}

void certificate_tasks(std::vector<Task>& tasks, int max_n) {
  for (const ImageCase& c : image_catalog()) {
    const int cap = case_cap(c, max_n);
    for (int n = 1; n < cap; ++n)
      tasks.push_back(guarded("certificates", "step", c.label, n, [&c, n] {
        const StepCertificate s = certify_step(c, n);
        json data{{"p", s.p},
                  {"derivedLower", s.derived_lower},
                  {"derivedUpper", s.derived_upper},
                  {"derivedKernel", s.derived_kernel()},
                  {"certificate", std::string(certificate_kind_name(s.kind))}};
        if (s.report) {
          data["A"] = mat_json(s.report->A);
          data["B"] = mat_json(s.report->B);
          data["kappa"] = mat_json(s.report->kappa);
          data["kappaDepth"] = s.report->kappa_depth;
          data["quotient"] = mat_json(s.report->quotient);
        }
        return std::vector<SuiteLine>{
            make_line("certificates", "step", c.label, n, s.explained() && s.consistent(), data)};
      }));
  }
  tasks.push_back(guarded("certificates", "symbolic", "symbolic", 0, [] {
    std::vector<SuiteLine> out;
    for (const SymbolicCheck& s : check_symbolic_quotients()) {
      json data{{"presentation", s.presentation},
                {"p", s.p},
                {"B", mat_json(s.report.B)},
                {"quotient", mat_json(s.report.quotient)},
                {"expected", mat_json(s.expected)}};
      out.push_back(make_line("certificates", "symbolic", "symbolic-" + s.presentation + "-p" + std::to_string(s.p),
                              s.n, s.matches && s.report.certifies(), data));
    }
    return out;
  }));
}

void theorem_tasks(std::vector<Task>& tasks, int max_n) {
  for (const ImageCase& c : image_catalog()) {
    const int cap = case_cap(c, max_n);
    for (int n = 1; n <= cap; ++n)
      tasks.push_back(guarded("theorems", "degree", c.label, n, [&c, n] {
        const DegreeReport r = check_degree_identity(c, c.witness, n);
        json data{{"abelianization", r.abelianization}, {"degree", r.degree}, {"theoremCase", r.theorem_case}};
        return std::vector<SuiteLine>{make_line("theorems", "degree", c.label, n, true, data)};
      }));
  }
}

void conjugacy_tasks(std::vector<Task>& tasks) {
  const auto& discs = inert_conjugacy_discs();
  for (std::size_t i = 0; i < discs.size(); ++i)
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const i64 d1 = discs[i], d2 = discs[j];
      const std::string label = "conjugacy/" + std::to_string(d1) + "/" + std::to_string(d2);
      tasks.push_back(guarded("conjugacy", "conjugate", label, 4, [=] {
        const ConjugacyPair r = conjugacy_pair(d1, d2);
        json data{{"disc1", d1}, {"disc2", d2}};
        data["conjugator"] = r.conjugator ? mat_json(*r.conjugator) : json(nullptr);
        return std::vector<SuiteLine>{make_line("conjugacy", "conjugate", label, 4, r.verified, data)};
      }));
    }
}

}  // namespace

SuiteResult run_suite(std::string_view suite, int max_n, int jobs) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    raise(ErrorCode::UnsupportedInput, "unknown suite '" + std::string(suite) + "'");
  if (max_n < 0) raise(ErrorCode::UnsupportedInput, "max-n must be >= 0");
  const bool all = suite == "all";
  std::vector<Task> tasks;
  if (all || suite == "lemmas") lemma_tasks(tasks, max_n);
  if (all || suite == "certificates") certificate_tasks(tasks, max_n);
  if (all || suite == "theorems") theorem_tasks(tasks, max_n);
  if (all || suite == "conjugacy") conjugacy_tasks(tasks);

  std::vector<std::vector<SuiteLine>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteResult out;
  for (auto& r : results)
    for (auto& l : r) out.lines.push_back(std::move(l));
  std::stable_sort(out.lines.begin(), out.lines.end(), [](const SuiteLine& a, const SuiteLine& b) {
    return std::tie(a.label, a.n, a.check) < std::tie(b.label, b.n, b.check);
  });
  return out;
}

}  // namespace maxab
