#include "itolab/error.hpp"

namespace itolab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kIncompatibleGrids:
      return "incompatible-grids";
    case ErrorCode::kPreconditionViolation:
      return "precondition-violation";
    case ErrorCode::kNotImplemented:
      return "not-implemented";
    case ErrorCode::kSizeLimit:
      return "size-limit";
    case ErrorCode::kParse:
      return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace itolab
