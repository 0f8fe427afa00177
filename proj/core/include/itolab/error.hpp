#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace itolab {

enum class ErrorCode {
  kInvalidArgument,
  kIncompatibleGrids,
  kPreconditionViolation,
  kNotImplemented,
  kSizeLimit,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace itolab
