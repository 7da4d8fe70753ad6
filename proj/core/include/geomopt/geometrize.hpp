#pragma once

// Plebanski maps between an effective space-time metric and an equivalent
// medium (eps, mu, w), in Cartesian and curvilinear coordinates.

#include <functional>
#include <limits>
#include <string>

#include "geomopt/constitutive.hpp"
#include "geomopt/tensor.hpp"

namespace geomopt {

struct GeometrizationResult {
  MaterialTensors material;
  double sqrt_minus_g = 1.0;
  double sqrt_minus_gamma = 1.0;
  double g00 = 1.0;
  /// Set when g00 < 0: the map is still evaluated but eps may be indefinite.
  bool negative_g00 = false;
};

/// eps^{ij} = mu^{ij} = -(sqrt(-g)/g00) g^{ij},  w_i = g_{i0}/g00.
/// g^{ij} is the spatial block of the full 4x4 inverse.
/// Throws NonLorentzian or ZeroG00.
GeometrizationResult plebanski_cartesian(const Metric4& g);

/// eps^{ij} = mu^{ij} = -(sqrt(-g)/sqrt(-gamma)) (1/g00) g^{ij},  w_i = g_{i0}/g00,
/// where gamma is the metric of the background curvilinear coordinates.
GeometrizationResult plebanski_curvilinear(const Metric4& g, const Metric4& gamma);

/// D^i = eps^{ij} E_j + eps^{ijk} w_j H_k,  B^i = mu^{ij} H_j - eps^{ijk} w_j E_k.
Inductions geometrized_constitutive(const GeometrizationResult& res, const Covec3& E,
                                    const Covec3& H);

/// G^{ab} = (sqrt(-g)/sqrt(-gamma)) g^{ac} g^{bd} F_{cd}. F must be covariant F-kind.
FieldTensor fourdim_constitutive(const Metric4& g, const Metric4& gamma, const FieldTensor& F);

/// diag(1, -n^2, -n^2, -n^2). Throws NonPositiveIndex unless n > 0.
Metric4 isotropic_metric_from_index(double n);

/// u_i = (g_{i0}/g00) c sqrt(|det g_{ij}|) / (n^2 - 1).
/// Throws UnitIndexSingularity when |n^2 - 1| <= tol.
Covec3 leonhardt_velocity(const Metric4& g, double n, double c = 1.0, double tol = 1e-9);

/// max_ij |(g_{ik} - g_{0i} g_{0k}/g00) g^{kj} - delta_i^j|.
double metric_identity_residual(const Metric4& g);

// ---------------------------------------------------------------------------
// Static metric fields.

struct Box3 {
  Point3 lo{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
  Point3 hi{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};

  bool contains(const Point3& p) const {
    for (int i = 0; i < 3; ++i)
      if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
    return true;
  }
};

/// Position -> metric, time independent. Evaluators must be reentrant.
///
/// A field may be piecewise smooth. In that case `interface` is a level set
/// whose zero set is where the metric has a kink, and `branch(x, side)`
/// evaluates the smooth extension of the side with sign `side` (-1 or +1)
/// at x, even slightly past the interface. Integrators use this to keep
/// finite-difference stencils on one side of the kink.
struct MetricField {
  std::function<Metric4(const Point3&)> metric;
  std::string tag;
  Box3 domain;
  std::function<double(const Point3&)> interface;
  std::function<Metric4(const Point3&, int)> branch;

  Metric4 operator()(const Point3& x) const { return metric(x); }
  bool piecewise() const { return static_cast<bool>(interface) && static_cast<bool>(branch); }
};

/// Spherically symmetric refractive index n(r), optionally with one kink at
/// r = kink where the inner and outer formulas meet.
struct RadialIndexProfile {
  std::function<double(double)> inner;
  std::function<double(double)> outer;
  double kink = std::numeric_limits<double>::infinity();

  double operator()(double r) const { return r <= kink ? inner(r) : outer(r); }
};

/// Pointwise lift of an isotropic index profile to a MetricField through
/// isotropic_metric_from_index.
MetricField lift_index_profile(const RadialIndexProfile& profile, std::string tag,
                               const Box3& domain = {});

/// Constant metric everywhere.
MetricField constant_field(const Metric4& g, std::string tag, const Box3& domain = {});

// ---------------------------------------------------------------------------
// Background coordinate systems.

enum class CoordinateSystem { Cartesian, Spherical, Cylindrical };

/// Vacuum metric of the coordinate system at `coords`:
/// Cartesian (x,y,z) -> eta; spherical (r,theta,phi) -> diag(1,-1,-r^2,-r^2 sin^2 theta);
/// cylindrical (rho,phi,z) -> diag(1,-1,-rho^2,-1).
Metric4 coordinate_metric(CoordinateSystem system, const Point3& coords);

}  // namespace geomopt
