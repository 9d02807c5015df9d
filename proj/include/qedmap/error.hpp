#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qedmap {

enum class ErrorKind {
  InvalidInput,
  InvalidAngle,
  BelowThreshold,
  OffShell,
  NotLightlike,
  InvalidState,
  RealnessViolation,
  TemplateViolation,
  NullOutcome,
  NumericalFailure,
  BSingular,
  DegenerateSpectrum,
  IllConditioned,
};

std::string_view to_string(ErrorKind kind);

// Process exit code associated with an error kind: 2 invalid input,
// 3 physics-invariant violation, 4 numerical failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace qedmap
