#pragma once

#include <stdexcept>
#include <string>

namespace xorcert {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kEmptyInstance = 3,
  kParse = 4,
  kIo = 5,
  kPrecondition = 6,
  kInternal = 7,
};

/// Exception carried by every failing library operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace xorcert
