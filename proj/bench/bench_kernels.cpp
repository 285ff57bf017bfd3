// Serial reference vs OpenMP kernels on the workloads the library actually
// runs: ball boundaries, Hausdorff distances and distance tables.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hilbert/gauges.hpp"
#include "hilbert/kernels.hpp"

namespace {

using namespace hilbert;

ConvexBody hexagon() {
  std::vector<Vector> v;
  for (int k = 0; k < 6; ++k) {
    const double th = k * M_PI / 3.0;
    v.push_back(Vector{{std::cos(th), std::sin(th)}});
  }
  return ConvexBody::from_vertices(v);
}

std::vector<Vector> circle(double r, int n, double phase) {
  std::vector<Vector> pts;
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n + phase;
    pts.push_back(Vector{{r * std::cos(th), r * std::sin(th)}});
  }
  return pts;
}

std::vector<kernels::PointPair> random_pairs(const ConvexBody& body, int n) {
  std::mt19937_64 rng(7);
  std::vector<kernels::PointPair> pairs;
  for (int k = 0; k < n; ++k) pairs.emplace_back(random_interior_point(body, rng), random_interior_point(body, rng));
  return pairs;
}

template <bool Parallel>
void BM_RadialBoundary(benchmark::State& state) {
  const ConvexBody body = hexagon();
  const Vector c = Vector::Zero(2);
  auto inside = [&](const Vector& p) { return raw::hilbert(body, p, c) <= 1.5; };
  for (auto _ : state) {
    auto r = Parallel ? kernels::omp::radial_boundary(body, c, inside, static_cast<int>(state.range(0)))
                      : kernels::serial::radial_boundary(body, c, inside, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_DirectedHausdorff(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = circle(1.0, n, 0.0);
  const auto b = circle(1.01, n, 0.3);
  for (auto _ : state) {
    double d = Parallel ? kernels::omp::directed_hausdorff(a, b) : kernels::serial::directed_hausdorff(a, b);
    benchmark::DoNotOptimize(d);
  }
}

template <bool Parallel>
void BM_DistanceTable(benchmark::State& state) {
  const ConvexBody body = hexagon();
  const auto pairs = random_pairs(body, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto rows = Parallel ? kernels::omp::distance_table(body, pairs) : kernels::serial::distance_table(body, pairs);
    benchmark::DoNotOptimize(rows);
  }
}

}  // namespace

BENCHMARK(BM_RadialBoundary<false>)->Name("radial_boundary/serial")->Arg(256)->Arg(2048);
BENCHMARK(BM_RadialBoundary<true>)->Name("radial_boundary/omp")->Arg(256)->Arg(2048);
BENCHMARK(BM_DirectedHausdorff<false>)->Name("directed_hausdorff/serial")->Arg(512)->Arg(4096);
BENCHMARK(BM_DirectedHausdorff<true>)->Name("directed_hausdorff/omp")->Arg(512)->Arg(4096);
BENCHMARK(BM_DistanceTable<false>)->Name("distance_table/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_DistanceTable<true>)->Name("distance_table/omp")->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
