#include <gtest/gtest.h>

#include <random>

#include "geomopt/sampling.hpp"
#include "geomopt/tensor.hpp"
#include "oracles.hpp"

using namespace geomopt;

namespace {

const Metric4 kEta = Metric4::minkowski();
const Metric4 kStretched = Metric4::diagonal(1.0, -4.0, -1.0, -1.0);

Metric4 boosted_off_diagonal() {
  Mat4 g = Mat4::diagonal({1.0, -1.0, -1.0, -1.0});
  g(0, 1) = g(1, 0) = 0.5;
  return Metric4(g);
}

double antisymmetry_defect(const Mat4& t) { return (t + t.transposed()).max_abs(); }

}  // namespace

TEST(Metric, RejectsAsymmetricStorage) {
  Mat4 g = Mat4::diagonal({1.0, -1.0, -1.0, -1.0});
  g(0, 1) = 0.1;
  try {
    Metric4 m(g);
    FAIL() << "expected AsymmetricMetric";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AsymmetricMetric);
  }
}

TEST(Metric, SqrtMinusDetRequiresLorentzian) {
  EXPECT_DOUBLE_EQ(kStretched.sqrt_minus_det(), 2.0);
  const Metric4 euclid = Metric4::diagonal(1.0, 1.0, 1.0, 1.0);
  EXPECT_FALSE(euclid.is_lorentzian());
  EXPECT_THROW(euclid.sqrt_minus_det(), Error);
}

TEST(MetricInverse, MinkowskiIsSelfInverse) { EXPECT_EQ(metric_inverse(kEta), kEta); }

TEST(MetricInverse, DiagonalHandInverse) {
  const Metric4 inv = metric_inverse(kStretched);
  EXPECT_EQ(inv, Metric4::diagonal(1.0, -0.25, -1.0, -1.0));
}

TEST(MetricInverse, OffDiagonalBlockAgainstEigen) {
  const Metric4 inv = metric_inverse(boosted_off_diagonal());
  const Eigen::Matrix4d ref = oracle::to_eigen(boosted_off_diagonal().components()).inverse();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(inv(i, j), ref(i, j), 1e-15);
  EXPECT_NEAR(inv(0, 0), 0.8, 1e-15);
  EXPECT_NEAR(inv(0, 1), 0.4, 1e-15);
  EXPECT_NEAR(inv(1, 1), -0.8, 1e-15);
  EXPECT_NEAR(inv(2, 2), -1.0, 1e-15);
  EXPECT_NEAR(inv(3, 3), -1.0, 1e-15);
}

TEST(MetricInverse, SingularMetricThrows) {
  const Metric4 degenerate = Metric4::diagonal(1.0, -1.0, 0.0, -1.0);
  try {
    metric_inverse(degenerate);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMetric);
  }
  // Tolerance is relative to the entry scale.
  const Metric4 tiny = Metric4::diagonal(1e-3, -1e-3, -1e-3, -1e-3);
  EXPECT_NO_THROW(metric_inverse(tiny));
}

TEST(MetricInverse, RandomProductIsIdentity) {
  Sampler s(11);
  for (int n = 0; n < 200; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const Mat4 prod = g.components() * metric_inverse(g).components();
    EXPECT_LE((prod - Mat4::identity()).max_abs(), 1e-12);
    const Mat4 inv = metric_inverse(g).components();
    EXPECT_EQ(inv, inv.transposed());
  }
}

TEST(FieldLayout, ElectricComponentOnly) {
  const FieldTensor F = build_F_lower(Covec3{{1, 0, 0}}, Vec3{});
  Mat4 expected;
  expected(0, 1) = 1.0;
  expected(1, 0) = -1.0;
  EXPECT_EQ(F.components(), expected);
  EXPECT_EQ(F.variance(), Variance::Covariant);
  EXPECT_EQ(F.kind(), FieldKind::F);
}

TEST(FieldLayout, MagneticSlots) {
  const FieldTensor F = build_F_lower(Covec3{}, Vec3{{1, 2, 3}});
  EXPECT_EQ(F(1, 2), -3.0);
  EXPECT_EQ(F(1, 3), 2.0);
  EXPECT_EQ(F(2, 3), -1.0);
  const FieldTensor G = build_G_upper(Vec3{}, Covec3{{1, 2, 3}});
  EXPECT_EQ(G(1, 2), -3.0);
  EXPECT_EQ(G(1, 3), 2.0);
  EXPECT_EQ(G(2, 3), -1.0);
}

TEST(FieldLayout, InductionOnly) {
  const FieldTensor G = build_G_upper(Vec3{{1, 0, 0}}, Covec3{});
  Mat4 expected;
  expected(0, 1) = -1.0;
  expected(1, 0) = 1.0;
  EXPECT_EQ(G.components(), expected);
}

TEST(FieldLayout, ZeroFieldsGiveZeroTensors) {
  EXPECT_EQ(build_F_lower({}, {}).components(), Mat4{});
  EXPECT_EQ(build_G_upper({}, {}).components(), Mat4{});
}

TEST(FieldLayout, RoundTripsAreExact) {
  const Covec3 E{{1, 2, 3}};
  const Vec3 B{{4, 5, 6}};
  const ElectricField eb = extract_EB(build_F_lower(E, B));
  EXPECT_EQ(eb.E, E);
  EXPECT_EQ(eb.B, B);
  Sampler s(3);
  for (int n = 0; n < 100; ++n) {
    const Vec3 D = s.vec();
    const Covec3 H = s.covec();
    const InductionField dh = extract_DH(build_G_upper(D, H));
    EXPECT_EQ(dh.D, D);
    EXPECT_EQ(dh.H, H);
  }
}

TEST(FieldLayout, ExtractionChecksTags) {
  const FieldTensor F = build_F_lower(Covec3{{1, 0, 0}}, Vec3{});
  const FieldTensor G = build_G_upper(Vec3{{1, 0, 0}}, Covec3{});
  try {
    extract_EB(raise_indices(F, kEta));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VarianceMismatch);
  }
  EXPECT_THROW(extract_DH(F), Error);
  EXPECT_THROW(extract_EB(G), Error);
}

TEST(FieldTensor, RejectsNonAntisymmetricInput) {
  Mat4 t;
  t(0, 1) = 1.0;
  t(1, 0) = 1.0;
  try {
    FieldTensor f(t, Variance::Covariant, FieldKind::F);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAntisymmetric);
  }
}

TEST(FieldTensor, StoresExactAntisymmetricPart) {
  Mat4 t;
  t(0, 1) = 1.0;
  t(1, 0) = -1.0 + 1e-14;
  const FieldTensor f(t, Variance::Covariant, FieldKind::F, 1e-12);
  EXPECT_EQ(f(0, 1), -f(1, 0));
}

TEST(RaiseLower, FlatRaisingFlipsElectricSign) {
  const FieldTensor F = build_F_lower(Covec3{{1, 2, 3}}, Vec3{{4, 5, 6}});
  const FieldTensor up = raise_indices(F, kEta);
  EXPECT_EQ(up.variance(), Variance::Contravariant);
  // F^{0i} = -E^i, F^{ij} = F_{ij} in flat space.
  EXPECT_EQ(up(0, 1), -1.0);
  EXPECT_EQ(up(0, 3), -3.0);
  EXPECT_EQ(up(1, 2), F(1, 2));
  EXPECT_EQ(up(2, 3), F(2, 3));
}

TEST(RaiseLower, RoundTripAndAntisymmetry) {
  Sampler s(5);
  for (int n = 0; n < 200; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
    const FieldTensor up = raise_indices(F, g);
    EXPECT_LE(antisymmetry_defect(up.components()), 1e-12 * up.components().max_abs());
    EXPECT_LE((lower_indices(up, g).components() - F.components()).max_abs(), 1e-12);
  }
}

TEST(RaiseLower, MatchesEigenContraction) {
  Sampler s(6);
  const Metric4 g = s.lorentzian_metric();
  const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
  const Eigen::Matrix4d inv = oracle::to_eigen(g.components()).inverse();
  const Eigen::Matrix4d ref = inv * oracle::to_eigen(F.components()) * inv.transpose();
  const FieldTensor up = raise_indices(F, g);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(up(a, b), ref(a, b), 1e-13);
}

TEST(RaiseLower, VarianceChecked) {
  const FieldTensor F = build_F_lower(Covec3{{1, 0, 0}}, Vec3{});
  EXPECT_THROW(lower_indices(F, kEta), Error);
  EXPECT_THROW(raise_indices(raise_indices(F, kEta), kEta), Error);
}

TEST(AlternatingTensor, MinkowskiValues) {
  const AlternatingTensor lower = alternating_tensor(kEta, Variance::Covariant);
  const AlternatingTensor upper = alternating_tensor(kEta, Variance::Contravariant);
  EXPECT_EQ(lower(0, 1, 2, 3), -1.0);
  EXPECT_EQ(upper(0, 1, 2, 3), 1.0);
  EXPECT_EQ(lower(1, 0, 2, 3), 1.0);
  EXPECT_EQ(lower(0, 0, 2, 3), 0.0);
  EXPECT_EQ(upper(3, 1, 2, 3), 0.0);
}

TEST(AlternatingTensor, DensityFromDeterminant) {
  EXPECT_EQ(alternating_tensor(kStretched, Variance::Covariant)(0, 1, 2, 3), -2.0);
  EXPECT_EQ(alternating_tensor(kStretched, Variance::Contravariant)(0, 1, 2, 3), 0.5);
}

TEST(AlternatingTensor, AgreesWithBruteForceRaising) {
  Sampler s(8);
  for (int n = 0; n < 5; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const AlternatingTensor upper = alternating_tensor(g, Variance::Contravariant);
    const AlternatingTensor lower = alternating_tensor(g, Variance::Covariant);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            EXPECT_NEAR(upper(a, b, c, d), oracle::alternating_upper(g.components(), a, b, c, d), 1e-12);
            EXPECT_NEAR(lower(a, b, c, d), oracle::alternating_lower(g.components(), a, b, c, d), 1e-12);
          }
  }
}

TEST(AlternatingTensor, FullContractionIsMinus24) {
  Sampler s(9);
  for (int n = 0; n < 100; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const AlternatingTensor upper = alternating_tensor(g, Variance::Contravariant);
    const AlternatingTensor lower = alternating_tensor(g, Variance::Covariant);
    double sum = 0.0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c)
          for (std::size_t d = 0; d < 4; ++d) sum += upper(a, b, c, d) * lower(a, b, c, d);
    EXPECT_NEAR(sum, -24.0, 1e-10);
  }
}

TEST(AlternatingTensor, NonLorentzianThrows) {
  try {
    alternating_tensor(Metric4::diagonal(1, 1, 1, 1), Variance::Covariant);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonLorentzian);
  }
}

TEST(Dual, MagneticFieldLayout) {
  const FieldTensor d = dual_F(build_F_lower(Covec3{}, Vec3{{1, 0, 0}}), kEta);
  EXPECT_EQ(d.variance(), Variance::Contravariant);
  EXPECT_EQ(d.kind(), FieldKind::FDual);
  EXPECT_EQ(d(0, 1), -1.0);
  EXPECT_EQ(d(0, 2), 0.0);
  EXPECT_EQ(d(0, 3), 0.0);
  EXPECT_EQ(d(2, 3), 0.0);
}

TEST(Dual, ElectricFieldMovesToSpatialSlots) {
  // *F^{ij} carries E: *F^{23} = E_1 for eta.
  const FieldTensor d = dual_F(build_F_lower(Covec3{{1, 0, 0}}, Vec3{}), kEta);
  EXPECT_EQ(d(2, 3), 1.0);
  EXPECT_EQ(d(0, 1), 0.0);
}

TEST(Dual, InductionLayoutAndDensity) {
  const FieldTensor G = build_G_upper(Vec3{}, Covec3{{1, 0, 0}});
  const FieldTensor flat = dual_G(G, kEta);
  EXPECT_EQ(flat.variance(), Variance::Covariant);
  EXPECT_EQ(flat.kind(), FieldKind::GDual);
  EXPECT_EQ(flat(0, 1), 1.0);
  EXPECT_EQ(dual_G(G, kStretched)(0, 1), 2.0);
}

TEST(Dual, ZeroMapsToZero) {
  EXPECT_EQ(dual_F(FieldTensor::zero(Variance::Covariant, FieldKind::F), kEta).components(), Mat4{});
  EXPECT_EQ(dual_G(FieldTensor::zero(Variance::Contravariant, FieldKind::G), kEta).components(),
            Mat4{});
}

TEST(Dual, MatchesBruteForceSum) {
  Sampler s(10);
  for (int n = 0; n < 5; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
    const Eigen::Matrix4d ref = oracle::dual(g.components(), oracle::to_eigen(F.components()), true);
    const FieldTensor d = dual_F(F, g);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) EXPECT_NEAR(d(a, b), ref(a, b), 1e-12);
  }
}

TEST(Dual, TagsAreEnforced) {
  const FieldTensor G = build_G_upper(Vec3{{1, 0, 0}}, Covec3{});
  try {
    dual_F(G, kEta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VarianceMismatch);
  }
  const FieldTensor G_as_lower(G.components(), Variance::Covariant, FieldKind::G);
  try {
    dual_F(G_as_lower, kEta);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KindMismatch);
  }
}

TEST(Dual, DoubleDualIsMinusIdentity) {
  Sampler s(12);
  for (int n = 0; n < 1000; ++n) {
    const Metric4 g = s.lorentzian_metric();
    const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
    const FieldTensor back = lower_indices(hodge_dual(lower_indices(dual_F(F, g), g), g), g);
    EXPECT_LE((back.components() + F.components()).max_abs(), 1e-10 * F.components().max_abs());
  }
}

TEST(LeviCivita, ThreeDimensionalCrossProduct) {
  EXPECT_EQ(levi_civita3(0, 1, 2), 1);
  EXPECT_EQ(levi_civita3(1, 0, 2), -1);
  EXPECT_EQ(levi_civita3(2, 0, 1), 1);
  EXPECT_EQ(levi_civita3(0, 0, 1), 0);
  const Vec3 z = cross(Vec3{{1, 0, 0}}, Vec3{{0, 1, 0}});
  EXPECT_EQ(z, (Vec3{{0, 0, 1}}));
}

TEST(LeviCivita, PermutationSignMatchesCycleParity) {
  std::array<int, 4> p{0, 1, 2, 3};
  do {
    EXPECT_EQ(permutation_sign4(p[0], p[1], p[2], p[3]), oracle::permutation_sign(p));
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_EQ(permutation_sign4(0, 1, 1, 3), 0);
}

TEST(Dual, FullComponentLayoutWithDensity) {
  Sampler s(13);
  const Covec3 E = s.covec();
  const Vec3 B = s.vec();
  const Vec3 D = s.vec();
  const Covec3 H = s.covec();
  const double root = 2.0;
  const FieldTensor dF = dual_F(build_F_lower(E, B), kStretched);
  const double f = 1.0 / root;
  EXPECT_NEAR(dF(0, 1), -B[0] * f, 1e-15);
  EXPECT_NEAR(dF(0, 2), -B[1] * f, 1e-15);
  EXPECT_NEAR(dF(0, 3), -B[2] * f, 1e-15);
  EXPECT_NEAR(dF(1, 2), E[2] * f, 1e-15);
  EXPECT_NEAR(dF(1, 3), -E[1] * f, 1e-15);
  EXPECT_NEAR(dF(2, 3), E[0] * f, 1e-15);

  const FieldTensor dG = dual_G(build_G_upper(D, H), kStretched);
  EXPECT_NEAR(dG(0, 1), H[0] * root, 1e-15);
  EXPECT_NEAR(dG(0, 2), H[1] * root, 1e-15);
  EXPECT_NEAR(dG(0, 3), H[2] * root, 1e-15);
  EXPECT_NEAR(dG(1, 2), D[2] * root, 1e-15);
  EXPECT_NEAR(dG(1, 3), -D[1] * root, 1e-15);
  EXPECT_NEAR(dG(2, 3), D[0] * root, 1e-15);
}
