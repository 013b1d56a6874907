#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weilflow {

enum class ErrorKind {
  BadInput,
  NotPrimePower,
  BadLength,
  BadNormalization,
  RiemannHypothesisViolation,
  NonOrdinary,
  DimensionTooLarge,
  RootRefinementFailure,
  CrossCheckFailure,
  FunctionalEquationViolation,
  NonIntegralInversion,
  CorrespondenceFailure,
  QuadratureNonConvergence,
  TruncationBudgetExceeded,
  InsufficientCountRange,
};

std::string_view to_string(ErrorKind kind);

// Suggested fix shown next to the error by the CLI.
std::string_view remediation_hint(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {})
      : std::runtime_error(message), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }

  // Same error, tagged with the pipeline stage where it surfaced. An existing
  // stage tag is kept: the innermost stage is the informative one.
  Error with_stage(const std::string& stage) const {
    return Error(kind_, what(), stage_.empty() ? stage : stage_);
  }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace weilflow
