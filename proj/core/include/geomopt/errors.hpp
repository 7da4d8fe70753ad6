#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geomopt {

enum class ErrorCode {
  SingularMetric,
  NonLorentzian,
  AsymmetricMetric,
  NotAntisymmetric,
  VarianceMismatch,
  KindMismatch,
  SingularMu,
  NonPositiveMedium,
  SuperluminalVelocity,
  MisalignedVelocity,
  NonDiagonalMaterial,
  SingularSystem,
  NonZeroCoupling,
  ZeroG00,
  NonPositiveIndex,
  UnitIndexSingularity,
  AsymmetricConnection,
  GridTooSmall,
  UnnormalizedVelocity,
  NonNullLaunch,
  UnknownMedium,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (notably the CLI, which records per-point failures as flagged rows)
// can branch on the kind of failure without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geomopt
