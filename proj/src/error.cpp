#include "qedmap/error.hpp"

namespace qedmap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidAngle: return "invalid-angle";
    case ErrorKind::BelowThreshold: return "below-threshold";
    case ErrorKind::OffShell: return "off-shell";
    case ErrorKind::NotLightlike: return "not-lightlike";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::RealnessViolation: return "realness-violation";
    case ErrorKind::TemplateViolation: return "template-violation";
    case ErrorKind::NullOutcome: return "null-outcome";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::BSingular: return "b-singular";
    case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
    case ErrorKind::IllConditioned: return "ill-conditioned";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidAngle:
    case ErrorKind::BelowThreshold:
    case ErrorKind::OffShell:
    case ErrorKind::NotLightlike:
    case ErrorKind::InvalidState:
      return 2;
    case ErrorKind::RealnessViolation:
    case ErrorKind::TemplateViolation:
    case ErrorKind::NullOutcome:
      return 3;
    case ErrorKind::NumericalFailure:
    case ErrorKind::BSingular:
    case ErrorKind::DegenerateSpectrum:
    case ErrorKind::IllConditioned:
      return 4;
  }
  return 4;
}

}  // namespace qedmap
