#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "compacton/ldg.hpp"
#include "compacton/parallel.hpp"
#include "compacton/timestepper.hpp"

using namespace compacton;
using std::numbers::pi;

namespace {

GridFunction bump(const GridPtr& g) {
  return project(g, [](double x) { return std::abs(x) <= 5 * pi ? std::pow(std::cos(x / 10), 3) : 0.0; });
}

// args: cells, polynomial order
void BM_RhsParallel(benchmark::State& state) {
  const auto g = make_grid(-8 * pi, 8 * pi, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                           static_cast<int>(state.range(1)) + 2);
  const LdgOperator op(make_kmn(2, 2), g);
  const auto u = bump(g);
  GridFunction out(g);
  for (auto _ : state) {
    op.rhs(u, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = max_threads();
}

void BM_RhsReference(benchmark::State& state) {
  const auto g = make_grid(-8 * pi, 8 * pi, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                           static_cast<int>(state.range(1)) + 2);
  const LdgOperator op(make_kmn(2, 2), g);
  const auto u = bump(g);
  for (auto _ : state) {
    auto out = op.rhs_reference(u);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Step(benchmark::State& state) {
  const auto g = make_grid(-8 * pi, 8 * pi, static_cast<int>(state.range(0)));
  const LdgOperator op(make_kmn(2, 2), g);
  SimState s{bump(g), 0.0, 0, {}, false};
  const double dt = cfl_dt(op, s.u, stable_dispersive_cfl(3));
  for (auto _ : state) {
    s = step(op, std::move(s), dt);
    benchmark::DoNotOptimize(s.u.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RhsParallel)->ArgsProduct({{100, 400, 1600}, {3}})->Args({400, 1})->Args({400, 2})->Args({400, 4});
BENCHMARK(BM_RhsReference)->ArgsProduct({{100, 400, 1600}, {3}})->Args({400, 1})->Args({400, 2})->Args({400, 4});
BENCHMARK(BM_Step)->Arg(100)->Arg(400);

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
