#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geomopt/raytrace.hpp"
#include "oracles.hpp"

using namespace geomopt;

namespace {

double radius(const RayState& s) { return std::sqrt(s.x[1] * s.x[1] + s.x[2] * s.x[2] + s.x[3] * s.x[3]); }

TraceOptions steps_of(double step, double length) {
  TraceOptions o;
  o.step = step;
  o.steps = static_cast<std::size_t>(std::ceil(length / step));
  return o;
}

// First state on the far rim of the unit sphere (x > 0, r = 1).
const RayState* exit_crossing(const Trajectory& t) {
  for (const RayState& s : t.states)
    if (s.x[1] > 0.0 && std::abs(radius(s) - 1.0) < 1e-9) return &s;
  return nullptr;
}

}  // namespace

TEST(Hamiltonian, Examples) {
  const Metric4 eta = Metric4::minkowski();
  EXPECT_EQ(hamiltonian(eta, {1, 1, 0, 0}), 0.0);
  EXPECT_EQ(hamiltonian(eta, {1, 0, 0, 0}), 0.5);
  // n = 2 medium: g^{ab} = diag(1, -1/4, -1/4, -1/4), k = (1, 2, 0, 0) is null.
  const Metric4 inv = metric_inverse(isotropic_metric_from_index(2.0));
  EXPECT_NEAR(hamiltonian(inv, {1, 2, 0, 0}), 0.0, 1e-15);
}

TEST(Catalog, ProfileValues) {
  const auto lune = find_medium("luneburg");
  EXPECT_NEAR(lune.profile(0.0), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(lune.profile(1.0), 1.0);
  EXPECT_EQ(lune.profile(2.0), 1.0);
  const auto fish = find_medium("maxwell_fisheye");
  EXPECT_EQ(fish.profile(0.0), 2.0);
  EXPECT_EQ(fish.profile(1.0), 1.0);
  EXPECT_EQ(find_medium("homogeneous", 1.5).profile(7.0), 1.5);
  EXPECT_TRUE(lune.field().piecewise());
  EXPECT_FALSE(fish.field().piecewise());
}

TEST(Catalog, UnknownMedium) {
  try {
    find_medium("glass");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownMedium);
  }
}

TEST(Launch, CovectorIsNullAndPointsAlongDirection) {
  const MetricField field = find_medium("maxwell_fisheye").field();
  const Point3 x0{0.3, -0.2, 0.1};
  const Vector4 k = launch_covector(field, x0, Vec3{{1, 2, -1}}, 2.5);
  const Metric4 inv = metric_inverse(field(x0));
  EXPECT_NEAR(hamiltonian(inv, k), 0.0, 1e-14);
  EXPECT_EQ(k[0], 2.5);
  // The ray velocity dx/dl = g^{ab} k_b is parallel to the requested direction.
  Vector4 v{};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) v[a] += inv(a, b) * k[b];
  EXPECT_NEAR(v[2] / v[1], 2.0, 1e-12);
  EXPECT_NEAR(v[3] / v[1], -1.0, 1e-12);
  EXPECT_GT(v[1], 0.0);
}

TEST(Launch, ProjectToNull) {
  const Metric4 inv = metric_inverse(isotropic_metric_from_index(2.0));
  const Vector4 k = project_to_null(inv, {1, 1.9, 0.1, 0});
  EXPECT_NEAR(hamiltonian(inv, k), 0.0, 1e-14);
  EXPECT_EQ(k[0], 1.0);
  EXPECT_NEAR(k[2] / k[1], 0.1 / 1.9, 1e-14);
}

TEST(Trace, NonNullLaunchRejected) {
  const MetricField field = constant_field(Metric4::minkowski(), "eta");
  try {
    trace_ray(field, {0, 0, 0, 0}, {1, 0.5, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonNullLaunch);
  }
  TraceOptions o;
  o.project_to_null = true;
  o.steps = 10;
  EXPECT_NO_THROW(trace_ray(field, {0, 0, 0, 0}, {1, 0.5, 0, 0}, o));
}

TEST(Trace, InvalidOptions) {
  const MetricField field = constant_field(Metric4::minkowski(), "eta");
  TraceOptions o;
  o.step = 0.0;
  EXPECT_THROW(trace_ray(field, {0, 0, 0, 0}, {1, 1, 0, 0}, o), Error);
}

TEST(Trace, HomogeneousStraightLine) {
  for (double n : {1.0, 2.0}) {
    const MetricField field = find_medium("homogeneous", n).field();
    const Vector4 k = launch_covector(field, {-2, 0, 0}, Vec3{{1, 1, 0}});
    const Trajectory t = trace_ray(field, {0, -2, 0, 0}, k, steps_of(1e-3, 3.0 * n));
    ASSERT_EQ(t.status, TraceStatus::Completed);
    for (const RayState& s : t.states) {
      const double travelled = std::hypot(s.x[1] + 2.0, s.x[2]);
      EXPECT_LE(std::abs(s.x[2] - (s.x[1] + 2.0)), 1e-10 * std::max(1.0, travelled));
      EXPECT_LE(std::abs(s.x[3]), 1e-12);
    }
    // Phase speed c/n: spatial distance over elapsed t.
    const RayState& last = t.states.back();
    EXPECT_NEAR(std::hypot(last.x[1] + 2.0, last.x[2]) / last.x[0], 1.0 / n, 1e-10);
  }
}

TEST(Trace, FisheyeOrbitIsClosedCircle) {
  const MetricField field = find_medium("maxwell_fisheye").field();
  const Vector4 k = launch_covector(field, {0.5, 0, 0}, Vec3{{0, 1, 0}});
  const Trajectory t = trace_ray(field, {0, 0.5, 0, 0}, k, steps_of(1e-3, 2.0 * std::numbers::pi));
  ASSERT_EQ(t.status, TraceStatus::Completed);
  std::vector<std::array<double, 2>> pts;
  for (const RayState& s : t.states) pts.push_back({s.x[1], s.x[2]});
  const oracle::Circle c = oracle::fit_circle(pts);
  EXPECT_LT(c.rms, 1e-3);
  // Circle through (0.5, 0) that meets the unit circle at antipodal points.
  EXPECT_NEAR(c.cx, -0.75, 1e-3);
  EXPECT_NEAR(c.cy, 0.0, 1e-3);
  EXPECT_NEAR(c.r, 1.25, 1e-3);
  const RayState& last = t.states.back();
  EXPECT_LT(std::hypot(last.x[1] - 0.5, last.x[2]), 1e-2);
  EXPECT_LT(t.max_null_drift, 1e-6);
}

TEST(Trace, LuneburgFanFocusesOnRim) {
  const auto lens = find_medium("luneburg");
  const MetricField field = lens.field();
  std::vector<Launch> launches;
  for (int i = 0; i < 11; ++i) {
    const Point3 x0{-2.0, -0.9 + 0.18 * i, 0.0};
    launches.push_back({{0, x0[0], x0[1], x0[2]}, launch_covector(field, x0, Vec3{{1, 0, 0}})});
  }
  const auto rays = trace_fan(field, launches, steps_of(1e-3, 5.0));
  ASSERT_EQ(rays.size(), 11u);
  double worst = 0.0;
  for (const Trajectory& t : rays) {
    const RayState* s = exit_crossing(t);
    ASSERT_NE(s, nullptr);
    worst = std::max(worst, std::hypot(s->x[1] - 1.0, s->x[2]));
    EXPECT_LT(t.max_null_drift, 1e-6);
    // Static metric: k_0 is a constant of motion.
    for (const RayState& st : t.states) EXPECT_NEAR(st.k[0], 1.0, 1e-8);
  }
  EXPECT_LT(worst, 1e-2);
}

TEST(Trace, FanMatchesSerialTraces) {
  const MetricField field = find_medium("maxwell_fisheye").field();
  std::vector<Launch> launches;
  for (int i = 0; i < 4; ++i) {
    const Point3 x0{0.1 * i, 0.2, 0.0};
    launches.push_back({{0, x0[0], x0[1], x0[2]}, launch_covector(field, x0, Vec3{{1, 0.5, 0}})});
  }
  const TraceOptions o = steps_of(1e-2, 1.0);
  const auto fan = trace_fan(field, launches, o);
  for (std::size_t i = 0; i < launches.size(); ++i) {
    const Trajectory serial = trace_ray(field, launches[i].x, launches[i].k, o);
    ASSERT_EQ(serial.states.size(), fan[i].states.size());
    EXPECT_EQ(serial.states.back().x, fan[i].states.back().x);
  }
}

TEST(Trace, DomainExit) {
  const MetricField field = find_medium("maxwell_fisheye").field();
  const Vector4 k = launch_covector(field, {2.5, 0, 0}, Vec3{{1, 0, 0}});
  const Trajectory t = trace_ray(field, {0, 2.5, 0, 0}, k, steps_of(1e-2, 20.0));
  EXPECT_EQ(t.status, TraceStatus::DomainExit);
  EXPECT_GT(t.states.back().x[1], 3.0);
  EXPECT_LE(t.states[t.states.size() - 2].x[1], 3.0);
}
