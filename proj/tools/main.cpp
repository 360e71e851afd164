#include "commands.hpp"

#include "maxab/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace maxab::cli;

int main(int argc, char** argv) {
  CLI::App app{"Maximal abelian subfields of CM division fields"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Maximal abelian subfield of Q(E[p^n])");
  classify->add_option("--a", ca.a, "Coefficient A of y^2 = x^3 + Ax + B")->required();
  classify->add_option("--b", ca.b, "Coefficient B")->required();
  classify->add_option("--p", ca.p, "Prime")->required();
  classify->add_option("--n", ca.n, "Exponent of the level p^n")->required();
  classify->add_option("--format", ca.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  AlphaArgs aa;
  auto* alpha = app.add_subcommand("alpha", "Twist class and alpha of a CM curve");
  alpha->add_option("--a", aa.a, "Coefficient A")->required();
  alpha->add_option("--b", aa.b, "Coefficient B")->required();
  alpha->add_option("--format", aa.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  GroupArgs ga;
  maxab::i64 disc = 0, delta_k = 0;
  auto* group = app.add_subcommand("group", "Inspect the Cartan normalizer mod p^n");
  auto* disc_opt = group->add_option("--disc", disc, "Order discriminant deltaK*f^2");
  auto* dk_opt = group->add_option("--deltaK", delta_k, "Fundamental discriminant");
  group->add_option("--f", ga.f, "Conductor (with --deltaK)");
  group->add_option("--p", ga.p, "Prime")->required();
  group->add_option("--n", ga.n, "Exponent of the level p^n")->required();
  group->add_option("--what", ga.what, "order, commutator, abelianization or kernel")
      ->check(CLI::IsMember({"order", "commutator", "abelianization", "kernel"}));
  disc_opt->excludes(dk_opt);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites and write a JSONL report");
  verify->add_option("--suite", va.suite, "lemmas, certificates, theorems, conjugacy or all")
      ->check(CLI::IsMember({"lemmas", "certificates", "theorems", "conjugacy", "all"}));
  verify->add_option("--max-n", va.max_n, "Cap on the level exponent (0: per-case caps)");
  verify->add_option("--out", va.out, "Report path (default: stdout)");
  verify->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber);

  BatchArgs ba;
  auto* batch = app.add_subcommand("batch", "Classify every record of a CSV or JSON file");
  batch->add_option("--in", ba.in, "Input path; .json for a list of objects, otherwise CSV with header A,B,p,n")
      ->required();
  batch->add_option("--out", ba.out, "Output path (default: stdout)");
  batch->add_option("--jobs", ba.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) return run_classify(ca, std::cout, std::cerr);
    if (*alpha) return run_alpha(aa, std::cout, std::cerr);
    if (*group) {
      if (*disc_opt) ga.disc = disc;
      if (*dk_opt) ga.delta_k = delta_k;
      return run_group(ga, std::cout, std::cerr);
    }
    if (*verify) return run_verify(va, std::cout, std::cerr);
    if (*batch) return run_batch(ba, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const maxab::Error& e) {
    std::cerr << "error (" << maxab::error_code_name(e.code()) << "): " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
