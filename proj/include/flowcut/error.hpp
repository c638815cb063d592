#pragma once

#include <stdexcept>
#include <string>

namespace flowcut {

enum class ErrorCode {
  kEmptyInstance,
  kNonIntegralField,
  kNonPositiveProcessing,
  kInfeasibleSchedule,
  kReleaseOutOfRange,
  kSlotBeforeRelease,
  kKindMismatch,
  kInfeasibleInput,
  kDeadlineMiss,
  kInfeasibleEdgeSet,
  kCorruptTable,
  kTooLarge,
  kOverflow,
  kParseError,
  kIoError,
  kPipelineInfeasible,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this exception type; the code
// identifies the failure class, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flowcut
