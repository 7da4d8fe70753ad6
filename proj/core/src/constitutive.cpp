#include "geomopt/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geomopt {

Inductions apply_constitutive_3d(const MaterialTensors& m, const Covec3& E, const Covec3& H) {
  if (m.w != Covec3{})
    throw Error(ErrorCode::NonZeroCoupling, "use geometrized_constitutive for media with w != 0");
  return {m.eps * E, m.mu * H};
}

double LambdaTensor::pair_antisymmetry_defect() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d) {
          worst = std::max(worst, std::abs(l_(a, b, c, d) + l_(b, a, c, d)));
          worst = std::max(worst, std::abs(l_(a, b, c, d) + l_(a, b, d, c)));
        }
  return worst;
}

LambdaTensor lambda_from_eps_mu(const Mat3& eps_mixed, const InversePermeability& mu_inv) {
  Rank4 l;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double half = 0.5 * eps_mixed(i, j);
      l(0, i + 1, 0, j + 1) = half;
      l(i + 1, 0, 0, j + 1) = -half;
      l(0, i + 1, j + 1, 0) = -half;
      l(i + 1, 0, j + 1, 0) = half;
    }
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 3; ++n) {
          double s = 0.0;
          for (std::size_t k = 0; k < 3; ++k) {
            const int eijk = levi_civita3(i, j, k);
            if (eijk == 0) continue;
            for (std::size_t q = 0; q < 3; ++q) {
              const int eqmn = levi_civita3(q, m, n);
              if (eqmn != 0) s += eijk * eqmn * mu_inv.m(q, k);
            }
          }
          l(i + 1, j + 1, m + 1, n + 1) = 0.5 * s;
        }
  return LambdaTensor(l);
}

LambdaTensor lambda_from_eps_mu(const Mat3& eps_mixed, const Permeability& mu) {
  const double scale = mu.m.max_abs();
  const double det = determinant(mu.m);
  const auto inv = invert(mu.m);
  if (!inv || scale == 0.0 || std::abs(det) < kDefaultTolerance * scale * scale * scale)
    throw Error(ErrorCode::SingularMu, "det mu = " + std::to_string(det));
  return lambda_from_eps_mu(eps_mixed, InversePermeability{*inv});
}

FieldTensor apply_lambda(const LambdaTensor& l, const FieldTensor& F_upper) {
  if (F_upper.variance() != Variance::Contravariant)
    throw Error(ErrorCode::VarianceMismatch, "apply_lambda needs contravariant F");
  if (F_upper.kind() != FieldKind::F) throw Error(ErrorCode::KindMismatch, "apply_lambda needs F");
  Mat4 g;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d) s += l(a, b, c, d) * F_upper(c, d);
      g(a, b) = s;
    }
  return {g, Variance::Contravariant, FieldKind::G};
}

IsotropicFactors isotropic_lambda_factored(const IsotropicMedium& m) {
  if (!(m.eps > 0.0) || !(m.mu > 0.0))
    throw Error(ErrorCode::NonPositiveMedium,
                "eps = " + std::to_string(m.eps) + ", mu = " + std::to_string(m.mu));
  const double root_mu = std::sqrt(m.mu);
  return {Mat4::diagonal({1.0 / (m.eps * root_mu), -root_mu, -root_mu, -root_mu}),
          Mat4::diagonal({m.eps * root_mu, -1.0 / root_mu, -1.0 / root_mu, -1.0 / root_mu})};
}

FieldTensor apply_isotropic_factored(const IsotropicFactors& f, const FieldTensor& F_lower) {
  if (F_lower.variance() != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "apply_isotropic_factored needs covariant F");
  const FieldTensor raised = contract_both(F_lower, f.upper, Variance::Contravariant);
  return {raised.components(), Variance::Contravariant, FieldKind::G};
}

namespace {

Vec3 beta_of(const MediumVelocity& v) {
  if (!(v.c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be positive");
  if (!(norm(v.u) < v.c))
    throw Error(ErrorCode::SuperluminalVelocity, "|u| = " + std::to_string(norm(v.u)));
  return (1.0 / v.c) * v.u;
}

// Matrix C with C x = beta cross x.
Mat3 cross_matrix(const Vec3& b) {
  Mat3 c;
  c(0, 1) = -b[2];
  c(0, 2) = b[1];
  c(1, 0) = b[2];
  c(1, 2) = -b[0];
  c(2, 0) = -b[1];
  c(2, 1) = b[0];
  return c;
}

void require_diagonal(const Mat3& m, double tol, const char* name) {
  const double bound = tol * m.max_abs();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && std::abs(m(i, j)) > bound)
        throw Error(ErrorCode::NonDiagonalMaterial, std::string(name) + " is not diagonal");
}

}  // namespace

Inductions minkowski_moving_3d(const IsotropicMedium& m, const MediumVelocity& v, const Vec3& E,
                               const Covec3& H) {
  const Vec3 beta = beta_of(v);
  const double k = m.eps * m.mu - 1.0;
  return {m.eps * E + k * cross(beta, H), m.mu * euclidean_dual(H) - k * cross(beta, E)};
}

Inductions tamm_moving_anisotropic_3d(const Mat3& eps_mixed, const Mat3& mu_mixed,
                                      const MediumVelocity& v, const Vec3& E, const Covec3& H,
                                      double align_tol) {
  const Vec3 beta = beta_of(v);
  const double speed = norm(beta);
  int moving_axes = 0;
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(beta[i]) > align_tol * speed) ++moving_axes;
  if (moving_axes > 1)
    throw Error(ErrorCode::MisalignedVelocity, "velocity must lie along a principal axis");
  require_diagonal(eps_mixed, align_tol, "eps");
  require_diagonal(mu_mixed, align_tol, "mu");

  // Unknowns (D, B):  D - eps C B = eps E - beta x H,   mu C D + B = mu H + beta x E.
  const Mat3 c = cross_matrix(beta);
  const Mat3 eps_c = eps_mixed * c;
  const Mat3 mu_c = mu_mixed * c;
  Matrix<6> a;
  for (std::size_t i = 0; i < 3; ++i) {
    a(i, i) = 1.0;
    a(i + 3, i + 3) = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      a(i, j + 3) = -eps_c(i, j);
      a(i + 3, j) = mu_c(i, j);
    }
  }
  const Vec3 rhs_d = eps_mixed * E - cross(beta, H);
  const Vec3 rhs_b = mu_mixed * euclidean_dual(H) + cross(beta, E);
  const std::array<double, 6> rhs{rhs_d[0], rhs_d[1], rhs_d[2], rhs_b[0], rhs_b[1], rhs_b[2]};
  const auto x = solve(a, rhs);
  if (!x || std::abs(determinant(a)) < kDefaultTolerance)
    throw Error(ErrorCode::SingularSystem, "moving-medium system is singular");
  return {Vec3{{(*x)[0], (*x)[1], (*x)[2]}}, Vec3{{(*x)[3], (*x)[4], (*x)[5]}}};
}

double tamm_residual(const Mat3& eps_mixed, const Mat3& mu_mixed, const MediumVelocity& v,
                     const Vec3& E, const Covec3& H, const Inductions& candidate) {
  const Vec3 beta = (1.0 / v.c) * v.u;
  const Vec3 d = eps_mixed * (E + cross(beta, candidate.B)) - cross(beta, H);
  const Vec3 b = mu_mixed * (euclidean_dual(H) - cross(beta, candidate.D)) + cross(beta, E);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    worst = std::max(worst, std::abs(d[i] - candidate.D[i]));
    worst = std::max(worst, std::abs(b[i] - candidate.B[i]));
  }
  return worst;
}

}  // namespace geomopt
