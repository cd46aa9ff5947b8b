#include <benchmark/benchmark.h>

#include <random>

#include "cubetile/fixtures.hpp"
#include "cubetile/mesh.hpp"
#include "cubetile/metric.hpp"
#include "cubetile/solver.hpp"
#include "cubetile/tiling.hpp"
#include "cubetile/triple.hpp"
#include "cubetile/verify.hpp"

namespace {

using namespace cubetile;

Triangulation grid(int n) { return fixtures::kuhn_grid(n, n, n); }

void BM_Distance(benchmark::State& state) {
  const Graph g = skeleton(grid(static_cast<int>(state.range(0))));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Metric m(g.vertex_count());
  for (auto& x : m) x = u(rng);
  const auto& a1 = g.boundary(BoundaryLabel::B1);
  const auto& a2 = g.boundary(BoundaryLabel::B1bar);
  for (auto _ : state) benchmark::DoNotOptimize(distance(g, m, a1, a2).length);
  state.SetLabel(std::to_string(g.vertex_count()) + " vertices");
}
BENCHMARK(BM_Distance)->Arg(2)->Arg(4)->Arg(8);

void BM_SolveExtremal(benchmark::State& state) {
  const Graph g = skeleton(grid(static_cast<int>(state.range(0))));
  const auto& a1 = g.boundary(BoundaryLabel::B1);
  const auto& a2 = g.boundary(BoundaryLabel::B1bar);
  for (auto _ : state) benchmark::DoNotOptimize(solve_extremal(g, a1, a2).h);
  state.SetLabel(std::to_string(g.vertex_count()) + " vertices");
}
BENCHMARK(BM_SolveExtremal)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  const Graph g = skeleton(fixtures::cube6());
  const auto& a1 = g.boundary(BoundaryLabel::B1);
  const auto& a2 = g.boundary(BoundaryLabel::B1bar);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_extremal(g, a1, a2));
}
BENCHMARK(BM_BruteForceOracle)->Unit(benchmark::kMillisecond);

void BM_TripleIntersection(benchmark::State& state) {
  const auto t = grid(static_cast<int>(state.range(0)));
  const Graph g = skeleton(t);
  const auto res = solve_extremal(g, g.boundary(BoundaryLabel::B1), g.boundary(BoundaryLabel::B1bar));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_triple_intersection(t, res).verdict);
  }
}
BENCHMARK(BM_TripleIntersection)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_VerifyTiling(benchmark::State& state) {
  const auto t = grid(3);
  const Graph g = skeleton(t);
  const auto res = solve_extremal(g, g.boundary(BoundaryLabel::B1), g.boundary(BoundaryLabel::B1bar));
  const auto tiling = build_tiling(t, res);
  VerifyOptions o;
  o.coverage_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_tiling(t, tiling, res, o).pass);
}
BENCHMARK(BM_VerifyTiling)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
