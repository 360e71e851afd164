#include "maxab/errors.hpp"

namespace maxab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SingularGenerator: return "SingularGenerator";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NonUnitDet: return "NonUnitDet";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::NotCM: return "NotCM";
    case ErrorCode::UnknownOrder: return "UnknownOrder";
    case ErrorCode::UnsupportedInput: return "UnsupportedInput";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::BadKappa: return "BadKappa";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace maxab
