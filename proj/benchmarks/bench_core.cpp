#include <benchmark/benchmark.h>

#include "geomopt/constitutive.hpp"
#include "geomopt/geometrize.hpp"
#include "geomopt/raytrace.hpp"
#include "geomopt/sampling.hpp"
#include "geomopt/verify.hpp"

using namespace geomopt;

static void BM_MetricInverse(benchmark::State& state) {
  Sampler s(1);
  const Metric4 g = s.lorentzian_metric();
  for (auto _ : state) benchmark::DoNotOptimize(metric_inverse(g));
}
BENCHMARK(BM_MetricInverse);

static void BM_PlebanskiCartesian(benchmark::State& state) {
  Sampler s(2);
  const Metric4 g = s.lorentzian_metric();
  for (auto _ : state) benchmark::DoNotOptimize(plebanski_cartesian(g));
}
BENCHMARK(BM_PlebanskiCartesian);

static void BM_FourDimConstitutive(benchmark::State& state) {
  Sampler s(3);
  const Metric4 g = s.lorentzian_metric();
  const FieldTensor F = build_F_lower(s.covec(), s.vec());
  const Metric4 eta = Metric4::minkowski();
  for (auto _ : state) benchmark::DoNotOptimize(fourdim_constitutive(g, eta, F));
}
BENCHMARK(BM_FourDimConstitutive);

static void BM_ApplyLambda(benchmark::State& state) {
  Sampler s(4);
  const LambdaTensor l = lambda_from_eps_mu(s.spd3(), Permeability{s.spd3()});
  const FieldTensor F = raise_indices(build_F_lower(s.covec(), s.vec()), Metric4::minkowski());
  for (auto _ : state) benchmark::DoNotOptimize(apply_lambda(l, F));
}
BENCHMARK(BM_ApplyLambda);

static void BM_DualF(benchmark::State& state) {
  Sampler s(5);
  const Metric4 g = s.lorentzian_metric();
  const FieldTensor F(s.antisymmetric(), Variance::Covariant, FieldKind::F);
  for (auto _ : state) benchmark::DoNotOptimize(dual_F(F, g));
}
BENCHMARK(BM_DualF);

static void BM_CyclicCovariantSum(benchmark::State& state) {
  Sampler s(6);
  const Rank3 dF = s.field_derivative();
  const Mat4 F = s.antisymmetric();
  const Connection c = s.symmetric_connection();
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_covariant_sum(dF, F, c));
}
BENCHMARK(BM_CyclicCovariantSum);

static void BM_TraceLuneburg(benchmark::State& state) {
  const MetricField field = find_medium("luneburg").field();
  const Point3 x0{-2.0, 0.3, 0.0};
  const Vector4 k = launch_covector(field, x0, Vec3{{1, 0, 0}});
  TraceOptions o;
  o.steps = static_cast<std::size_t>(state.range(0));
  o.step = 5.0 / static_cast<double>(o.steps);
  for (auto _ : state) benchmark::DoNotOptimize(trace_ray(field, {0, x0[0], x0[1], x0[2]}, k, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceLuneburg)->Arg(1000)->Arg(5000);
BENCHMARK_MAIN();
