#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ekspace {

enum class ErrorCode {
  kOverflow,
  kNotInvertible,
  kEvenModulus,
  kSumMismatch,
  kNoConditionC,
  kInvalidLens,
  kZeroW,
  kPrecisionLoss,
  kImaginaryResidual,
  kAmbiguousMatch,
  kPatternViolation,
  kDegenerateFit,
  kFormatError,
  kSerializationPrecisionLoss,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ekspace
