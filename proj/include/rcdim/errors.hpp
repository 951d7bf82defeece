#pragma once

#include <stdexcept>
#include <string>

namespace rcdim {

enum class ErrorCode {
  InvalidRadius,
  IndexOutOfRange,
  DegenerateCloud,
  DegenerateGraph,
  DegenerateProbability,
  RadiusMismatch,
  OutOfRange,
  NonMonotone,
  InsufficientVertices,
  InsufficientBlocks,
  InvalidSampleCount,
  InvalidParameter,
  InvalidCount,
  NestednessViolation,
  ParseError,
  IoError,
  UsageError,
};

const char* error_code_name(ErrorCode code);

/// Exit status used by the CLI for this error class (stable across releases).
int error_code_exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rcdim
