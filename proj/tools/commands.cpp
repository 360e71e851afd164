#include "commands.hpp"

#include "maxab/cartan.hpp"
#include "maxab/classify.hpp"
#include "maxab/cmcurves.hpp"
#include "maxab/errors.hpp"
#include "maxab/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace maxab::cli {

namespace {

using json = nlohmann::ordered_json;

Rational parse_coefficient(const std::string& text, const char* name) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  }
}

i64 parse_i64(std::string_view s, const std::string& what) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(what + ": not an integer: '" + std::string(s) + "'");
  return v;
}

void require_prime_level(i64 p, i64 n) {
  if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw UsageError("n must be >= 1");
}

int domain_error(const Error& e, std::ostream& err) {
  if (e.code() == ErrorCode::NotCM) err << "not a CM curve: " << e.what() << "\n";
  else err << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
  return kDomain;
}

CMOrder order_from_disc(i64 disc) {
  if (disc >= 0) throw UsageError("discriminant must be negative");
  for (i64 f = 1; f * f <= -disc; ++f) {
    if (disc % (f * f) != 0) continue;
    const i64 dk = disc / (f * f);
    if (fundamental_discriminant(squarefree_part(dk)) == dk) return CMOrder{dk, f};
  }
  throw UsageError("no imaginary quadratic order of discriminant " + std::to_string(disc));
}

std::ostream& open_out(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  return file;
}

struct BatchRecord {
  std::size_t line = 0;
  std::string A, B;
  i64 p = 0;
  i64 n = 0;
};

std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(row);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!row.empty() && row.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<BatchRecord> read_csv(std::istream& in) {
  std::vector<BatchRecord> recs;
  std::string row;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, row)) {
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(row);
    if (!header) {
      std::string h;
      for (auto& c : cells) {
        for (char& ch : c) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        h += c + ",";
      }
      if (h != "a,b,p,n,") throw UsageError("line " + std::to_string(line) + ": expected header A,B,p,n");
      header = true;
      continue;
    }
    if (cells.size() != 4)
      throw UsageError("line " + std::to_string(line) + ": expected 4 columns, got " + std::to_string(cells.size()));
    const std::string where = "line " + std::to_string(line);
    BatchRecord r{line, cells[0], cells[1], parse_i64(cells[2], where + " p"), parse_i64(cells[3], where + " n")};
    parse_coefficient(r.A, (where + " A").c_str());
    parse_coefficient(r.B, (where + " B").c_str());
    recs.push_back(std::move(r));
  }
  return recs;
}

std::string json_scalar_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw UsageError(where + ": expected an integer or a decimal string");
}

std::vector<BatchRecord> read_json(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw UsageError("JSON batch input must be a list of objects");
  std::vector<BatchRecord> recs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& o = doc[i];
    const std::string where = "record " + std::to_string(i + 1);
    if (!o.is_object() || !o.contains("A") || !o.contains("B") || !o.contains("p") || !o.contains("n"))
      throw UsageError(where + ": expected an object with A, B, p, n");
    BatchRecord r{i + 1, json_scalar_text(o["A"], where), json_scalar_text(o["B"], where),
                  parse_i64(json_scalar_text(o["p"], where), where + " p"),
                  parse_i64(json_scalar_text(o["n"], where), where + " n")};
    parse_coefficient(r.A, (where + " A").c_str());
    parse_coefficient(r.B, (where + " B").c_str());
    recs.push_back(std::move(r));
  }
  return recs;
}

}  // namespace

int run_classify(const ClassifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.format != "text" && args.format != "json") throw UsageError("--format must be text or json");
  const RationalCurve E{parse_coefficient(args.a, "--a"), parse_coefficient(args.b, "--b")};
  require_prime_level(args.p, args.n);
  try {
    const ClassificationReport r = classify_max_abelian(E, args.p, args.n);
    out << (args.format == "json" ? report_to_json(r) : render_text(r)) << "\n";
    return kOk;
  } catch (const Error& e) {
    return domain_error(e, err);
  }
}

int run_alpha(const AlphaArgs& args, std::ostream& out, std::ostream& err) {
  if (args.format != "text" && args.format != "json") throw UsageError("--format must be text or json");
  const RationalCurve E{parse_coefficient(args.a, "--a"), parse_coefficient(args.b, "--b")};
  try {
    const TwistData t = twist_data(E);
    if (args.format == "json") {
      json j{{"alpha", t.alpha.str()},
             {"kind", std::string(twist_kind_name(t.kind))},
             {"d", t.d.str()},
             {"base", {{"deltaK", t.base_order.delta_K}, {"f", t.base_order.f}}}};
      out << j.dump() << "\n";
    } else {
      out << "alpha " << t.alpha << "\n"
          << "kind " << twist_kind_name(t.kind) << "\n"
          << "d " << t.d << "\n"
          << "base (" << t.base_order.delta_K << "," << t.base_order.f << ")\n";
    }
    return kOk;
  } catch (const Error& e) {
    return domain_error(e, err);
  }
}

int run_group(const GroupArgs& args, std::ostream& out, std::ostream& err) {
  if (args.disc && args.delta_k) throw UsageError("give either --disc or --deltaK, not both");
  if (!args.disc && !args.delta_k) throw UsageError("one of --disc or --deltaK is required");
  const CMOrder order = args.disc ? order_from_disc(*args.disc) : CMOrder{*args.delta_k, args.f};
  if (args.f < 1) throw UsageError("--f must be >= 1");
  if (order.delta_K >= 0 || fundamental_discriminant(squarefree_part(order.delta_K)) != order.delta_K)
    throw UsageError(std::to_string(order.delta_K) + " is not a negative fundamental discriminant");
  require_prime_level(args.p, args.n);
  static const std::vector<std::string> whats{"order", "commutator", "abelianization", "kernel"};
  if (std::find(whats.begin(), whats.end(), args.what) == whats.end())
    throw UsageError("--what must be order, commutator, abelianization or kernel");
  try {
    const i64 M = ipow(args.p, static_cast<unsigned>(args.n));
    const FiniteMatGroup N = build_normalizer(params_for(order, M));
    if (args.what == "order") {
      out << N.order() << "\n";
    } else if (args.what == "commutator") {
      out << derived_subgroup(N).order() << "\n";
    } else if (args.what == "abelianization") {
      out << abelianization_order(N) << "\n";
    } else {
      if (args.n < 2) throw UsageError("--what kernel needs n >= 2");
      const FiniteMatGroup K = kernel_of_reduction(N, M / args.p);
      for (const Mat2& x : K.elements()) out << x.to_string() << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    return domain_error(e, err);
  }
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), args.suite) == names.end())
    throw UsageError("--suite must be one of lemmas, certificates, theorems, conjugacy, all");
  if (args.max_n < 0) throw UsageError("--max-n must be >= 0");
  if (args.jobs < 1) throw UsageError("--jobs must be >= 1");
  SuiteResult res;
  try {
    res = run_suite(args.suite, args.max_n, args.jobs);
  } catch (const Error& e) {
    return domain_error(e, err);
  }
  std::ofstream file;
  std::ostream& dest = open_out(args.out, file, out);
  for (const auto& l : res.lines) dest << l.json << "\n";
  const auto passed = std::count_if(res.lines.begin(), res.lines.end(), [](const SuiteLine& l) { return l.pass; });
  std::ostream& summary = (&dest == &out) ? err : out;
  summary << "suite " << args.suite << ": " << passed << "/" << res.lines.size() << " checks passed\n";
  for (const auto& l : res.lines)
    if (!l.pass) summary << "  FAIL " << l.check << " " << l.label << " n=" << l.n << "\n";
  return res.all_pass() ? kOk : kVerifyFailed;
}

int run_batch(const BatchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.jobs < 1) throw UsageError("--jobs must be >= 1");
  std::ifstream in(args.in);
  if (!in) throw UsageError("cannot read '" + args.in + "'");
  std::string ext = args.in.size() >= 5 ? args.in.substr(args.in.size() - 5) : "";
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  const std::vector<BatchRecord> recs = ext == ".json" ? read_json(in) : read_csv(in);
  for (const auto& r : recs)
    if (!is_prime(r.p) || r.n < 1)
      throw UsageError("line " + std::to_string(r.line) + ": need a prime p and n >= 1");

  std::vector<std::string> lines(recs.size());
  std::vector<char> failed(recs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < recs.size(); i = next++) {
      const BatchRecord& r = recs[i];
      try {
        const RationalCurve E{parse_rational(r.A), parse_rational(r.B)};
        lines[i] = report_to_json(classify_max_abelian(E, r.p, static_cast<int>(r.n)));
      } catch (const Error& e) {
        failed[i] = 1;
        lines[i] = json{{"line", r.line}, {"error", std::string(error_code_name(e.code()))}, {"message", e.what()}}
                       .dump();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(args.jobs, static_cast<int>(recs.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream& dest = open_out(args.out, file, out);
  for (const auto& l : lines) dest << l << "\n";
  const bool any_failed = std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; });
  if (any_failed) err << "some records could not be classified\n";
  return any_failed ? kDomain : kOk;
}

}  // namespace maxab::cli
