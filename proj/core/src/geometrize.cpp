#include "geomopt/geometrize.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace geomopt {

namespace {

// +0.0 turns a signed zero into an unsigned one so that vanishing material
// entries compare bit-identically.
double unsign_zero(double v) { return v + 0.0; }

double checked_g00(const Metric4& g) {
  const double g00 = g(0, 0);
  if (std::abs(g00) <= kDefaultTolerance * g.components().max_abs())
    throw Error(ErrorCode::ZeroG00, "g00 = " + std::to_string(g00));
  return g00;
}

GeometrizationResult geometrize(const Metric4& g, double sqrt_minus_gamma) {
  const double sqrt_minus_g = g.sqrt_minus_det();
  const double g00 = checked_g00(g);
  const Mat4 inv = metric_inverse(g).components();
  const double factor = -(sqrt_minus_g / sqrt_minus_gamma) / g00;

  GeometrizationResult res;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j)
      res.material.eps(i, j) = unsign_zero(factor * inv(i + 1, j + 1));
    res.material.w[i] = unsign_zero(g(i + 1, 0) / g00);
  }
  res.material.mu = res.material.eps;
  res.sqrt_minus_g = sqrt_minus_g;
  res.sqrt_minus_gamma = sqrt_minus_gamma;
  res.g00 = g00;
  res.negative_g00 = g00 < 0.0;
  return res;
}

}  // namespace

GeometrizationResult plebanski_cartesian(const Metric4& g) { return geometrize(g, 1.0); }

GeometrizationResult plebanski_curvilinear(const Metric4& g, const Metric4& gamma) {
  return geometrize(g, gamma.sqrt_minus_det());
}

Inductions geometrized_constitutive(const GeometrizationResult& res, const Covec3& E,
                                    const Covec3& H) {
  const MaterialTensors& m = res.material;
  return {m.eps * E + cross(m.w, H), m.mu * H - cross(m.w, E)};
}

FieldTensor fourdim_constitutive(const Metric4& g, const Metric4& gamma, const FieldTensor& F) {
  if (F.variance() != Variance::Covariant)
    throw Error(ErrorCode::VarianceMismatch, "fourdim_constitutive needs covariant F");
  if (F.kind() != FieldKind::F) throw Error(ErrorCode::KindMismatch, "fourdim_constitutive needs F");
  const double density = g.sqrt_minus_det() / gamma.sqrt_minus_det();
  const FieldTensor raised =
      contract_both(F, metric_inverse(g).components(), Variance::Contravariant, density);
  return {raised.components(), Variance::Contravariant, FieldKind::G};
}

Metric4 isotropic_metric_from_index(double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::NonPositiveIndex, "n = " + std::to_string(n));
  const double n2 = n * n;
  return Metric4::diagonal(1.0, -n2, -n2, -n2);
}

Covec3 leonhardt_velocity(const Metric4& g, double n, double c, double tol) {
  if (!(n > 0.0)) throw Error(ErrorCode::NonPositiveIndex, "n = " + std::to_string(n));
  const double denom = n * n - 1.0;
  if (std::abs(denom) <= tol)
    throw Error(ErrorCode::UnitIndexSingularity, "n^2 - 1 = " + std::to_string(denom));
  const double g00 = checked_g00(g);
  const double spatial = std::sqrt(std::abs(determinant(g.spatial_block())));
  Covec3 u;
  for (std::size_t i = 0; i < 3; ++i) u[i] = (g(i + 1, 0) / g00) * c * spatial / denom;
  return u;
}

double metric_identity_residual(const Metric4& g) {
  const double g00 = checked_g00(g);
  const Mat4 inv = metric_inverse(g).components();
  double worst = 0.0;
  for (std::size_t i = 1; i < 4; ++i)
    for (std::size_t j = 1; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t k = 1; k < 4; ++k) s += (g(i, k) - g(0, i) * g(0, k) / g00) * inv(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

MetricField lift_index_profile(const RadialIndexProfile& profile, std::string tag,
                               const Box3& domain) {
  auto radius = [](const Point3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); };
  MetricField field;
  field.tag = std::move(tag);
  field.domain = domain;
  field.metric = [profile, radius](const Point3& x) {
    return isotropic_metric_from_index(profile(radius(x)));
  };
  if (std::isfinite(profile.kink)) {
    field.interface = [kink = profile.kink, radius](const Point3& x) { return radius(x) - kink; };
    field.branch = [profile, radius](const Point3& x, int side) {
      const double r = radius(x);
      return isotropic_metric_from_index(side < 0 ? profile.inner(r) : profile.outer(r));
    };
  }
  return field;
}

MetricField constant_field(const Metric4& g, std::string tag, const Box3& domain) {
  MetricField field;
  field.tag = std::move(tag);
  field.domain = domain;
  field.metric = [g](const Point3&) { return g; };
  return field;
}

Metric4 coordinate_metric(CoordinateSystem system, const Point3& coords) {
  switch (system) {
    case CoordinateSystem::Cartesian:
      return Metric4::minkowski();
    case CoordinateSystem::Spherical: {
      const double r = coords[0];
      const double s = std::sin(coords[1]);
      return Metric4::diagonal(1.0, -1.0, -r * r, -r * r * s * s);
    }
    case CoordinateSystem::Cylindrical: {
      const double rho = coords[0];
      return Metric4::diagonal(1.0, -1.0, -rho * rho, -1.0);
    }
  }
  return Metric4::minkowski();
}

}  // namespace geomopt
