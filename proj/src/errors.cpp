#include "rcdim/errors.hpp"

namespace rcdim {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateCloud: return "DegenerateCloud";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::DegenerateProbability: return "DegenerateProbability";
    case ErrorCode::RadiusMismatch: return "RadiusMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::InsufficientVertices: return "InsufficientVertices";
    case ErrorCode::InsufficientBlocks: return "InsufficientBlocks";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::NestednessViolation: return "NestednessViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

int error_code_exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError: return 2;
    case ErrorCode::ParseError: return 3;
    case ErrorCode::InvalidRadius:
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::InvalidSampleCount:
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidCount:
    case ErrorCode::OutOfRange: return 4;
    case ErrorCode::DegenerateCloud:
    case ErrorCode::DegenerateGraph:
    case ErrorCode::DegenerateProbability:
    case ErrorCode::NonMonotone: return 5;
    case ErrorCode::NestednessViolation: return 6;
    case ErrorCode::InsufficientVertices:
    case ErrorCode::InsufficientBlocks: return 7;
    case ErrorCode::RadiusMismatch: return 8;
    case ErrorCode::IoError: return 9;
  }
  return 1;
}

}  // namespace rcdim
