#pragma once

#include <stdexcept>
#include <string>

namespace logdef {

enum class ErrorKind {
  BandLimitExceeded,
  ToleranceUnreachable,
  GridTooSmall,
  PrecisionExhausted,
  LiouvilleModeUnsupported,
  InvalidModel,
  InvalidLambda,
  InvalidInput,
  DivisorNearZero,
  NotFirstOrder,
  NotMaurerCartan,
  ObstructionPresent,
  StepUnsolvable,
  SearchExhausted,
  DegreeOverflow,
  JacobiFails,
  BandProjectionTooLossy,
  NoNowhereZeroSolution,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  // Extra integer payload (failing step, failing p, ...); -1 when unused.
  int detail = -1;

 private:
  ErrorKind kind_;
};

// Errors that mean "the question could not be settled at this precision"
// rather than "the input is malformed".
bool is_undecided_kind(ErrorKind k);

}  // namespace logdef
