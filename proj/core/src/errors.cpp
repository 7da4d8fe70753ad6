#include "geomopt/errors.hpp"

namespace geomopt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::NonLorentzian: return "NonLorentzian";
    case ErrorCode::AsymmetricMetric: return "AsymmetricMetric";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::VarianceMismatch: return "VarianceMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SingularMu: return "SingularMu";
    case ErrorCode::NonPositiveMedium: return "NonPositiveMedium";
    case ErrorCode::SuperluminalVelocity: return "SuperluminalVelocity";
    case ErrorCode::MisalignedVelocity: return "MisalignedVelocity";
    case ErrorCode::NonDiagonalMaterial: return "NonDiagonalMaterial";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonZeroCoupling: return "NonZeroCoupling";
    case ErrorCode::ZeroG00: return "ZeroG00";
    case ErrorCode::NonPositiveIndex: return "NonPositiveIndex";
    case ErrorCode::UnitIndexSingularity: return "UnitIndexSingularity";
    case ErrorCode::AsymmetricConnection: return "AsymmetricConnection";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::UnnormalizedVelocity: return "UnnormalizedVelocity";
    case ErrorCode::NonNullLaunch: return "NonNullLaunch";
    case ErrorCode::UnknownMedium: return "UnknownMedium";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace geomopt
