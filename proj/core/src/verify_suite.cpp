#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "geomopt/constitutive.hpp"
#include "geomopt/geometrize.hpp"
#include "geomopt/sampling.hpp"
#include "geomopt/verify.hpp"

namespace geomopt {

std::string CheckResult::report_line() const {
  char buf[160];
  const char* op = comparison == Comparison::AtLeast ? ">=" : "";
  std::snprintf(buf, sizeof buf, "%s residual=%.6e threshold=%s%.6e %s", name.c_str(), residual, op,
                threshold, within_threshold() ? "PASS" : "FAIL");
  std::string line = buf;
  if (expect_failure) line += " EXPECTED-FAIL";
  return line;
}

namespace {

constexpr int kDraws = 1000;

template <Variance V>
double max_abs_diff(const Vector3<V>& a, const Vector3<V>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <Variance V>
double max_abs(const Vector3<V>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

double rank3_diff(const Rank3& a, const Rank3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

double cancellation_scale(const Rank3& dF, const Mat4& F, const Connection& conn) {
  return std::max({1.0, dF.max_abs(), conn.gamma.max_abs() * F.max_abs()});
}

// Relative cancellation defect of one draw.
double cancellation_defect(const Rank3& dF, const Mat4& F, const Connection& conn,
                           SymmetryCheck check) {
  const Rank3 partial = cyclic_partial_sum(dF);
  const Rank3 covariant = cyclic_covariant_sum(dF, F, conn, check);
  return rank3_diff(partial, covariant) / cancellation_scale(dF, F, conn);
}

CheckResult christoffel_cancellation(Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < kDraws; ++n) {
    const Rank3 dF = s.field_derivative();
    const Mat4 F = s.antisymmetric();
    const Connection conn = s.symmetric_connection();
    worst = std::max(worst, cancellation_defect(dF, F, conn, SymmetryCheck::Enforce));
  }
  return {"christoffel_cancellation", worst, 1e-12};
}

CheckResult asymmetric_connection_control(Sampler& s) {
  double weakest = INFINITY;
  for (int n = 0; n < kDraws; ++n) {
    const Rank3 dF = s.field_derivative();
    const Mat4 F = s.antisymmetric();
    Connection conn = s.symmetric_connection();
    for (double& v : conn.gamma.a) v += s.uniform(-1.0, 1.0);
    weakest = std::min(weakest, cancellation_defect(dF, F, conn, SymmetryCheck::Skip));
  }
  return {"christoffel_asymmetric_connection_control", weakest, 1e-6, Comparison::AtMost, true};
}

CheckResult nonantisymmetric_field_control(Sampler& s) {
  double weakest = INFINITY;
  for (int n = 0; n < kDraws; ++n) {
    const Rank3 dF = s.field_derivative();
    Mat4 F = s.antisymmetric();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) {
        const double sym = s.uniform(-1.0, 1.0);
        F(i, j) += sym;
        if (i != j) F(j, i) += sym;
      }
    const Connection conn = s.symmetric_connection();
    weakest = std::min(weakest, cancellation_defect(dF, F, conn, SymmetryCheck::Enforce));
  }
  return {"christoffel_nonantisymmetric_field_control", weakest, 1e-6, Comparison::AtMost, true};
}

CheckResult metric_identity(Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < kDraws; ++n) worst = std::max(worst, metric_identity_residual(s.lorentzian_metric()));
  return {"metric_identity", worst, 1e-10};
}

CheckResult double_dual(Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < kDraws; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
    const FieldTensor dual = dual_F(F, g);
    const FieldTensor twice = hodge_dual(lower_indices(dual, g), g);
    const FieldTensor back = lower_indices(twice, g);
    worst = std::max(worst, (back.components() + F.components()).max_abs() / F.components().max_abs());
  }
  return {"double_dual", worst, 1e-10};
}

std::vector<CheckResult> geometrization_checks(Sampler& s) {
  double impedance = 0.0, equivalence = 0.0;
  for (int n = 0; n < kDraws; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const GeometrizationResult res = plebanski_cartesian(g);
    const Mat3& eps = res.material.eps;
    impedance = std::max(impedance, (eps - res.material.mu).max_abs());
    impedance = std::max(impedance, (eps - eps.transposed()).max_abs() / eps.max_abs());

    const Covec3 E = s.covec();
    const Vec3 B = s.vec();
    const FieldTensor G = fourdim_constitutive(g, Metric4::minkowski(), build_F_lower(E, B));
    const InductionField dh = extract_DH(G);
    const Inductions three = geometrized_constitutive(res, E, dh.H);
    const double scale = std::max({max_abs(dh.D), max_abs(B), 1e-300});
    equivalence = std::max(equivalence,
                           std::max(max_abs_diff(three.D, dh.D), max_abs_diff(three.B, B)) / scale);
  }
  return {{"impedance_matching", impedance, 1e-12},
          {"fourdim_threedim_equivalence", equivalence, 1e-10}};
}

CheckResult inverse_round_trip() {
  double worst = 0.0;
  for (double n : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    const Mat3 eps = plebanski_cartesian(isotropic_metric_from_index(n)).material.eps;
    worst = std::max(worst, (eps - n * Mat3::identity()).max_abs() / n);
  }
  return {"inverse_round_trip", worst, 1e-12};
}

std::vector<CheckResult> curvilinear_checks(Sampler& s) {
  double reduction = 0.0, vacuum = 0.0;
  for (int n = 0; n < kDraws; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const auto a = plebanski_cartesian(g).material;
    const auto b = plebanski_curvilinear(g, Metric4::minkowski()).material;
    if (!(a.eps == b.eps && a.mu == b.mu && a.w == b.w)) reduction = 1.0;
  }
  for (int n = 0; n < 100; ++n) {
    const Point3 p{s.uniform(0.5, 3.0), s.uniform(0.2, std::numbers::pi - 0.2), s.uniform(0.0, 6.0)};
    const Metric4 gamma = coordinate_metric(CoordinateSystem::Spherical, p);
    const GeometrizationResult res = plebanski_curvilinear(gamma, gamma);
    const Covec3 E = s.covec();
    const Vec3 D = geometrized_constitutive(res, E, Covec3{}).D;
    // Raising with the positive-definite spatial metric -g_{ij}.
    const Mat3 raise = -1.0 * *invert(gamma.spatial_block());
    const Vec3 expected = raise * E;
    vacuum = std::max(vacuum, max_abs_diff(D, expected) / std::max(max_abs(expected), 1e-300));
  }
  return {{"curvilinear_cartesian_reduction", reduction, 0.0},
          {"curvilinear_spherical_vacuum", vacuum, 1e-12}};
}

CheckResult lambda_matches_threedim(Sampler& s) {
  double worst = 0.0;
  for (int n = 0; n < kDraws; ++n) {
    const Mat3 eps = s.spd3();
    const Mat3 mu = s.spd3();
    const LambdaTensor l = lambda_from_eps_mu(eps, Permeability{mu});
    const Covec3 E = s.covec();
    const Covec3 H = s.covec();
    const Vec3 B = mu * H;
    const Metric4 eta = Metric4::minkowski();
    const FieldTensor G = apply_lambda(l, raise_indices(build_F_lower(E, B), eta));
    const InductionField dh = extract_DH(G);
    const Vec3 D = eps * E;
    const double scale = std::max(max_abs(D), max_abs(H));
    worst = std::max(worst, std::max(max_abs_diff(dh.D, D), max_abs_diff(dh.H, H)) / scale);
  }
  return {"lambda_threedim_equivalence", worst, 1e-10};
}

// ---------------------------------------------------------------------------
// Grid convergence.

GridSpec4 centred_grid(const Vector4& centre, double h, std::array<std::size_t, 4> count) {
  GridSpec4 spec;
  spec.count = count;
  for (std::size_t a = 0; a < 4; ++a) {
    spec.spacing[a] = h;
    spec.origin[a] = centre[a] - 0.5 * static_cast<double>(count[a] - 1) * h;
  }
  return spec;
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

CheckResult bianchi_order() {
  // A non-null potential so the discrete cyclic sum has nonvanishing O(h^2) truncation.
  const PotentialFn A = [](const Vector4& x) {
    return Vector4{0.0, std::sin(x[0] - 2.0 * x[3]), std::cos(x[1] + 0.5 * x[2]), 0.0};
  };
  const Vector4 centre{0.3, 0.2, -0.1, 0.4};
  const double coarse = bianchi_residual_grid(A, centred_grid(centre, 0.02, {5, 5, 5, 5}));
  const double fine = bianchi_residual_grid(A, centred_grid(centre, 0.01, {5, 5, 5, 5}));
  return {"bianchi_grid_order", observed_order(coarse, fine), 1.9, Comparison::AtLeast};
}

// Plane wave along x in a medium (eps, mu): E_y = cos(kx - wt), w = k / sqrt(eps mu).
Mat4 medium_plane_wave(const Vector4& x) {
  constexpr double eps = 2.0, mu = 1.5, k = 2.0;
  const double w = k / std::sqrt(eps * mu);
  const double phase = std::cos(k * x[1] - w * x[0]);
  const Vec3 D{{0.0, eps * phase, 0.0}};
  const Covec3 H{{0.0, 0.0, k / (w * mu) * phase}};
  return build_G_upper(D, H).components();
}

CheckResult divergence_order() {
  const MetricField flat = constant_field(Metric4::minkowski(), "vacuum");
  const Vector4 centre{0.1, 0.3, 0.0, 0.0};
  auto residual = [&](double h) {
    const FieldGrid G = FieldGrid::sample(centred_grid(centre, h, {9, 9, 1, 1}), medium_plane_wave);
    return divergence_residual(G, flat, nullptr).max_abs;
  };
  return {"divergence_grid_order", observed_order(residual(0.02), residual(0.01)), 1.9,
          Comparison::AtLeast};
}

// ---------------------------------------------------------------------------
// Moving media.

double projection_residual(const IsotropicMedium& m, const MediumVelocity& v, const Covec3& E,
                           const Vec3& B, const Vec3& D, const Covec3& H) {
  const ProjectionResidual r =
      minkowski_projection_residual(build_F_lower(E, B), build_G_upper(D, H), m, four_velocity(v),
                                    Metric4::minkowski(), v.c);
  return std::max(r.electric, r.magnetic);
}

std::vector<CheckResult> moving_media_checks(Sampler& s) {
  double rest = 0.0, tamm = 0.0;
  for (int n = 0; n < 100; ++n) {
    const IsotropicMedium m{s.uniform(1.0, 4.0), s.uniform(1.0, 4.0)};
    const Covec3 E = s.covec();
    const Covec3 H = s.covec();
    const Inductions r = minkowski_moving_3d(m, MediumVelocity{}, euclidean_dual(E), H);
    rest = std::max(rest, projection_residual(m, MediumVelocity{}, E, r.B, r.D, H));

    MediumVelocity v;
    v.u[n % 3] = s.uniform(-0.5, 0.5);
    const Inductions t = tamm_moving_anisotropic_3d(m.eps * Mat3::identity(), m.mu * Mat3::identity(),
                                                    v, euclidean_dual(E), H);
    const double scale = std::max({max_abs(t.D), max_abs(t.B), 1.0});
    tamm = std::max(tamm, projection_residual(m, v, E, t.B, t.D, H) / scale);
  }

  // The simplified three-dimensional form is first order in u/c; the
  // residual of the covariant relations is measured under halving.
  const IsotropicMedium m{2.0, 3.0};
  const Covec3 E{{0.3, -0.7, 0.5}};
  const Covec3 H{{-0.2, 0.4, 0.9}};
  auto residual = [&](double beta) {
    MediumVelocity v;
    v.u = Vec3{{beta, 0.5 * beta, -0.25 * beta}};
    const Inductions r = minkowski_moving_3d(m, v, euclidean_dual(E), H);
    return projection_residual(m, v, E, r.B, r.D, H);
  };
  return {{"minkowski_rest_frame_projection", rest, 1e-12},
          {"tamm_isotropic_projection", tamm, 1e-12},
          {"minkowski_threedim_order", observed_order(residual(0.02), residual(0.01)), 1.9,
           Comparison::AtLeast}};
}

}  // namespace

std::vector<CheckResult> run_verification_suite(std::uint64_t seed) {
  Sampler s(seed);
  std::vector<CheckResult> out;
  out.push_back(christoffel_cancellation(s));
  out.push_back(asymmetric_connection_control(s));
  out.push_back(nonantisymmetric_field_control(s));
  out.push_back(metric_identity(s));
  out.push_back(double_dual(s));
  for (auto& c : geometrization_checks(s)) out.push_back(c);
  out.push_back(inverse_round_trip());
  for (auto& c : curvilinear_checks(s)) out.push_back(c);
  out.push_back(lambda_matches_threedim(s));
  out.push_back(bianchi_order());
  out.push_back(divergence_order());
  for (auto& c : moving_media_checks(s)) out.push_back(c);
  return out;
}

}  // namespace geomopt
