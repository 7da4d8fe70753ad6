#pragma once

// Numerical checks of the identities the geometrization rests on: the
// Christoffel cancellation in the cyclic Bianchi sum, divergence-form Maxwell
// equations on grids, and the moving-media projections.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "geomopt/constitutive.hpp"
#include "geomopt/geometrize.hpp"
#include "geomopt/tensor.hpp"

namespace geomopt {

/// Dense rank-3 array indexed (a,b,c), a..c in 0..3.
struct Rank3 {
  std::array<double, 64> a{};

  double& operator()(std::size_t i, std::size_t j, std::size_t k) { return a[(i * 4 + j) * 4 + k]; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a[(i * 4 + j) * 4 + k];
  }
  double max_abs() const;
};

/// Christoffel symbols, gamma(d, a, b) = Gamma^d_{ab}.
struct Connection {
  Rank3 gamma;

  /// max |Gamma^d_{ab} - Gamma^d_{ba}|.
  double lower_asymmetry() const;
};

/// Christoffel symbols of a static metric field at x, metric derivatives by
/// central differences with step delta (time derivatives vanish).
Connection christoffel_symbols(const MetricField& field, const Point3& x, double delta = 1e-5);

enum class SymmetryCheck { Enforce, Skip };

/// dF(a,b,c) = d_a F_{bc}. Returns S(a,b,c) = d_a F_{bc} + d_b F_{ca} + d_c F_{ab}.
Rank3 cyclic_partial_sum(const Rank3& dF);

/// The same cyclic sum with covariant derivatives,
///   nabla_a F_{bc} = d_a F_{bc} - Gamma^d_{ab} F_{dc} - Gamma^d_{ac} F_{bd},
/// expanded term by term. With SymmetryCheck::Enforce a connection whose lower
/// asymmetry exceeds tol * max|Gamma| throws AsymmetricConnection; Skip lets
/// negative controls through. F is taken raw so it may be non-antisymmetric.
Rank3 cyclic_covariant_sum(const Rank3& dF, const Mat4& F, const Connection& connection,
                           SymmetryCheck check = SymmetryCheck::Enforce,
                           double tol = kDefaultTolerance);

Rank3 cyclic_covariant_sum(const Rank3& dF, const FieldTensor& F, const Connection& connection);

// ---------------------------------------------------------------------------
// Grids.

/// Uniform grid over (t, x, y, z). Axes with a single point are static:
/// nothing is differentiated along them.
struct GridSpec4 {
  Vector4 origin{};
  Vector4 spacing{1.0, 1.0, 1.0, 1.0};
  std::array<std::size_t, 4> count{1, 1, 1, 1};

  std::size_t total() const { return count[0] * count[1] * count[2] * count[3]; }
  std::size_t flat(const std::array<std::size_t, 4>& idx) const {
    return ((idx[0] * count[1] + idx[1]) * count[2] + idx[2]) * count[3] + idx[3];
  }
  std::array<std::size_t, 4> unflatten(std::size_t flat) const;
  Vector4 position(const std::array<std::size_t, 4>& idx) const;
};

/// Samples of a contravariant rank-2 field on a GridSpec4.
class FieldGrid {
 public:
  FieldGrid(GridSpec4 spec, std::vector<Mat4> samples);

  static FieldGrid sample(const GridSpec4& spec, const std::function<Mat4(const Vector4&)>& field);

  const GridSpec4& spec() const { return spec_; }
  const Mat4& at(const std::array<std::size_t, 4>& idx) const { return samples_[spec_.flat(idx)]; }

 private:
  GridSpec4 spec_;
  std::vector<Mat4> samples_;
};

/// A_a(x) for x = (t, x, y, z).
using PotentialFn = std::function<Vector4(const Vector4&)>;
/// j^a(x).
using CurrentFn = std::function<Vector4(const Vector4&)>;

/// Builds F_{ab} = d_a A_b - d_b A_a at every node from the potential
/// (fourth-order central stencil on the grid spacing), then takes the cyclic
/// sum with second-order central differences between nodes and returns the
/// interior max-abs. Because the two stencils differ, the result measures
/// the O(h^2) truncation of the discrete cyclic sum.
/// Throws GridTooSmall unless every axis has at least 3 points.
double bianchi_residual_grid(const PotentialFn& A, const GridSpec4& grid);

struct GridResidual {
  double max_abs = 0.0;
  /// Max over beta at each interior node, in interior iteration order.
  std::vector<double> per_point;
};

/// (1/sqrt(-gamma)) d_a (sqrt(-gamma) G^{ab}) - (4 pi / c) j^b at interior
/// nodes by central differences; gamma is evaluated at the spatial position.
/// A null `current` means j = 0. Throws GridTooSmall for axes with 2 points.
GridResidual divergence_residual(const FieldGrid& G, const MetricField& gamma,
                                 const CurrentFn& current, double c = 1.0);

// ---------------------------------------------------------------------------
// Moving media.

/// gamma (c, u) for a medium moving with 3-velocity u in Minkowski space.
Vector4 four_velocity(const MediumVelocity& v);

struct ProjectionResidual {
  double electric = 0.0;  // max |G^{ab} u_b - eps F^{ab} u_b|
  double magnetic = 0.0;  // max |*F^{ab} u_b - mu *G^{ab} u_b|
};

/// Residuals of Minkowski's covariant moving-media relations for a given
/// (F_{ab}, G^{ab}) pair. Throws UnnormalizedVelocity unless
/// g_{ab} u^a u^b = c^2 to 1e-9 (relative).
ProjectionResidual minkowski_projection_residual(const FieldTensor& F_lower,
                                                 const FieldTensor& G_upper,
                                                 const IsotropicMedium& medium,
                                                 const Vector4& u_upper, const Metric4& g,
                                                 double c = 1.0);

// ---------------------------------------------------------------------------
// Verification report.

enum class Comparison { AtMost, AtLeast };

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  /// Negative control: the check is supposed to miss its threshold.
  bool expect_failure = false;

  bool within_threshold() const {
    return comparison == Comparison::AtMost ? residual <= threshold : residual >= threshold;
  }
  /// True when the outcome is the intended one (pass, or fail for a negative control).
  bool ok() const { return within_threshold() != expect_failure; }
  /// "NAME residual=R threshold=T PASS|FAIL" with " EXPECTED-FAIL" for controls.
  std::string report_line() const;
};

/// Runs the fixed invariant suite with random draws seeded by `seed`.
std::vector<CheckResult> run_verification_suite(std::uint64_t seed);

}  // namespace geomopt
