#pragma once

#include "maxab/residues.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace maxab::cli {

/// Process exit codes.
enum Exit : int { kOk = 0, kUsage = 1, kDomain = 2, kVerifyFailed = 3 };

/// Thrown for malformed user input; maps to kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassifyArgs {
  std::string a, b;
  i64 p = 0;
  int n = 1;
  std::string format = "text";
};

struct AlphaArgs {
  std::string a, b;
  std::string format = "text";
};

struct GroupArgs {
  std::optional<i64> disc;
  std::optional<i64> delta_k;
  i64 f = 1;
  i64 p = 0;
  int n = 1;
  std::string what = "order";
};

struct VerifyArgs {
  std::string suite = "all";
  int max_n = 0;
  std::string out;
  int jobs = 1;
};

struct BatchArgs {
  std::string in;
  std::string out;
  int jobs = 1;
};

int run_classify(const ClassifyArgs& args, std::ostream& out, std::ostream& err);
int run_alpha(const AlphaArgs& args, std::ostream& out, std::ostream& err);
int run_group(const GroupArgs& args, std::ostream& out, std::ostream& err);
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int run_batch(const BatchArgs& args, std::ostream& out, std::ostream& err);

}  // namespace maxab::cli
