#include <benchmark/benchmark.h>

#include "isospec/heatprobe.hpp"
#include "isospec/jmaps.hpp"
#include "isospec/mat.hpp"
#include "isospec/metrics.hpp"
#include "isospec/rng.hpp"
#include "isospec/sampling.hpp"

using namespace isospec;

namespace {

CMatrix fixed_su3() {
    return schueth_family(1.2).evaluate(ZVector{0.8, -0.3});
}

} // namespace

static void BM_char_poly(benchmark::State& state) {
    const CMatrix m = fixed_su3();
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(m));
}
BENCHMARK(BM_char_poly);

static void BM_eigenvalue_multiset(benchmark::State& state) {
    const CMatrix m = fixed_su3();
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalue_multiset(m));
}
BENCHMARK(BM_eigenvalue_multiset);

static void BM_conjugator(benchmark::State& state) {
    const JMapPair j = schueth_family(1.5707963267948966);
    const JMapPair j2 = schueth_family(0.7853981633974483);
    const ZVector z{1.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(conjugator_for(j, j2, z));
}
BENCHMARK(BM_conjugator);

static void BM_metric_eval_sphere(benchmark::State& state) {
    StreamRng rng(1, 0);
    const MetricSpec spec(Manifold::Sphere, schueth_family(0.9), 4);
    const SpherePoint p = sample_sphere_point(rng, 4);
    const TangentVector x = sample_tangent(rng, p);
    const TangentVector y = sample_tangent(rng, p);
    for (auto _ : state) benchmark::DoNotOptimize(metric_eval(spec, p, x, y));
}
BENCHMARK(BM_metric_eval_sphere);

static void BM_metric_eval_cpn(benchmark::State& state) {
    StreamRng rng(2, 0);
    const MetricSpec spec(Manifold::CPn, schueth_family(0.9), 4);
    const SpherePoint p = sample_sphere_point(rng, 4);
    const TangentVector x = sample_hopf_horizontal(rng, p);
    const TangentVector y = sample_hopf_horizontal(rng, p);
    for (auto _ : state) benchmark::DoNotOptimize(metric_eval(spec, p, x, y));
}
BENCHMARK(BM_metric_eval_cpn);

static void BM_gram_hopf_frame(benchmark::State& state) {
    StreamRng rng(3, 0);
    const MetricSpec spec(Manifold::CPn, schueth_family(0.9), 4);
    const SpherePoint p = sample_sphere_point(rng, 4);
    const auto frame = hopf_horizontal_frame(p);
    for (auto _ : state) benchmark::DoNotOptimize(gram(spec, p, frame));
}
BENCHMARK(BM_gram_hopf_frame);

static void BM_chart_metric(benchmark::State& state) {
    StreamRng rng(4, 0);
    const MetricSpec spec(Manifold::CPn, schueth_family(0.9), 4);
    RVector x(8);
    for (int k = 0; k < 8; ++k) x(k) = 0.4 * rng.normal();
    for (auto _ : state) benchmark::DoNotOptimize(chart_metric(spec, x));
}
BENCHMARK(BM_chart_metric);

static void BM_scalar_curvature_fd(benchmark::State& state) {
    StreamRng rng(5, 0);
    const MetricSpec spec(Manifold::CPn, schueth_family(0.9), 4);
    RVector x(8);
    for (int k = 0; k < 8; ++k) x(k) = 0.4 * rng.normal();
    for (auto _ : state) benchmark::DoNotOptimize(scalar_curvature_fd(spec, x));
}
BENCHMARK(BM_scalar_curvature_fd);

BENCHMARK_MAIN();
