#include "ekspace/error.hpp"

namespace ekspace {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kEvenModulus: return "EvenModulus";
    case ErrorCode::kSumMismatch: return "SumMismatch";
    case ErrorCode::kNoConditionC: return "NoConditionC";
    case ErrorCode::kInvalidLens: return "InvalidLens";
    case ErrorCode::kZeroW: return "ZeroW";
    case ErrorCode::kPrecisionLoss: return "PrecisionLoss";
    case ErrorCode::kImaginaryResidual: return "ImaginaryResidual";
    case ErrorCode::kAmbiguousMatch: return "AmbiguousMatch";
    case ErrorCode::kPatternViolation: return "PatternViolation";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kSerializationPrecisionLoss: return "SerializationPrecisionLoss";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ekspace
