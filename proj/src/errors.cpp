#include "weilflow/errors.hpp"

namespace weilflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::BadNormalization: return "BadNormalization";
    case ErrorKind::RiemannHypothesisViolation: return "RiemannHypothesisViolation";
    case ErrorKind::NonOrdinary: return "NonOrdinary";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::RootRefinementFailure: return "RootRefinementFailure";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::FunctionalEquationViolation: return "FunctionalEquationViolation";
    case ErrorKind::NonIntegralInversion: return "NonIntegralInversion";
    case ErrorKind::CorrespondenceFailure: return "CorrespondenceFailure";
    case ErrorKind::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorKind::TruncationBudgetExceeded: return "TruncationBudgetExceeded";
    case ErrorKind::InsufficientCountRange: return "InsufficientCountRange";
  }
  return "Unknown";
}

std::string_view remediation_hint(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadInput:
      return "check the input document: it needs q and either g + weil_poly or trace";
    case ErrorKind::NotPrimePower:
      return "q must be a prime power p^f";
    case ErrorKind::BadLength:
      return "weil_poly must list exactly 2g+1 coefficients, ascending in X";
    case ErrorKind::BadNormalization:
      return "weil_poly must start with 1 and end with q^g";
    case ErrorKind::RiemannHypothesisViolation:
      return "the polynomial is not a Weil q-polynomial; every inverse root needs |mu| = sqrt(q)";
    case ErrorKind::NonOrdinary:
      return "pass --allow-non-ordinary to run on a non-ordinary input";
    case ErrorKind::DimensionTooLarge:
      return "raise --max-dimension to run larger g (cost grows like C(2g,g))";
    case ErrorKind::RootRefinementFailure:
      return "the polynomial is ill-conditioned; check the coefficients";
    case ErrorKind::CrossCheckFailure:
      return "exact and floating-point products disagree; report this input";
    case ErrorKind::FunctionalEquationViolation:
      return "zero sets of P_j and P_{2g-j} are not symmetric; the input is not a Weil polynomial";
    case ErrorKind::NonIntegralInversion:
      return "point counts are inconsistent; report this input";
    case ErrorKind::CorrespondenceFailure:
      return "orbit and closed-point counts disagree; this is an implementation bug";
    case ErrorKind::QuadratureNonConvergence:
      return "use wider bumps (larger w) or a smaller tolerance demand";
    case ErrorKind::TruncationBudgetExceeded:
      return "loosen --tol, widen the bumps, or raise --nu-max";
    case ErrorKind::InsufficientCountRange:
      return "extend the count range to cover the test-function support";
  }
  return "";
}

}  // namespace weilflow
