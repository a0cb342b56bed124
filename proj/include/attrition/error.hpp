#pragma once

#include <stdexcept>
#include <string>

namespace attrition {

// One exception class for the whole toolkit; the kind tells callers (and the
// CLI exit-code mapping) which contract was violated.
enum class ErrorKind {
  Parse,
  Range,
  Duplicate,
  NegativeCount,
  UnknownWindow,
  EmptyCohort,
  InsufficientData,
  Degenerate,
  DegenerateBaseline,
  NotPositiveDefinite,
  NonConvergence,
  EmptyTeam,
  MissingLabel,
  SingleClass,
  TinyMinority,
  TooFewSamples,
  LengthMismatch,
  Dimension,
  EmptyNode,
  Io,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Duplicate: return "DuplicateError";
    case ErrorKind::NegativeCount: return "NegativeCountError";
    case ErrorKind::UnknownWindow: return "UnknownWindowError";
    case ErrorKind::EmptyCohort: return "EmptyCohortError";
    case ErrorKind::InsufficientData: return "InsufficientDataError";
    case ErrorKind::Degenerate: return "DegenerateError";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaselineError";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefiniteError";
    case ErrorKind::NonConvergence: return "NonConvergenceError";
    case ErrorKind::EmptyTeam: return "EmptyTeamError";
    case ErrorKind::MissingLabel: return "MissingLabelError";
    case ErrorKind::SingleClass: return "SingleClassError";
    case ErrorKind::TinyMinority: return "TinyMinorityError";
    case ErrorKind::TooFewSamples: return "TooFewSamplesError";
    case ErrorKind::LengthMismatch: return "LengthMismatchError";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::EmptyNode: return "EmptyNodeError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Diagnostics for malformed inputs name file, line and the violated rule.
[[noreturn]] inline void fail_at(ErrorKind kind, const std::string& file,
                                 std::size_t line, const std::string& rule) {
  throw Error(kind, file + ":" + std::to_string(line) + ": " + rule);
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace attrition
