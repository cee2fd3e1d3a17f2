#include "mindiam/errors.hpp"

namespace mindiam {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PreconditionViolation:
      return "PreconditionViolation";
    case ErrorCode::OracleTooLarge:
      return "OracleTooLarge";
    case ErrorCode::GridTooFine:
      return "GridTooFine";
    case ErrorCode::HoleTopology:
      return "HoleTopology";
    case ErrorCode::NotSeparable:
      return "NotSeparable";
    case ErrorCode::RegionOutsideFocus:
      return "RegionOutsideFocus";
    case ErrorCode::IterationLimit:
      return "IterationLimit";
    case ErrorCode::SchemaViolation:
      return "SchemaViolation";
    case ErrorCode::NotCcw:
      return "NotCcw";
    case ErrorCode::EmptyColorClass:
      return "EmptyColorClass";
  }
  return "UnknownError";
}

}  // namespace mindiam
