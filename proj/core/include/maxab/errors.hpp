#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxab {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorCode {
  NonUnit,
  ZeroInput,
  ModulusMismatch,
  Singular,
  SingularGenerator,
  SizeLimitExceeded,
  BadTarget,
  NotSubgroup,
  NonUnitDet,
  BadDelta,
  SingularCurve,
  NotCM,
  UnknownOrder,
  UnsupportedInput,
  NotInGroup,
  BadKappa,
  AssertionFailure,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace maxab
