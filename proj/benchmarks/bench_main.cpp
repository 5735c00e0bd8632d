#include <benchmark/benchmark.h>

#include "gdaha/algebras.hpp"
#include "gdaha/ds_solver.hpp"
#include "gdaha/monodromy.hpp"
#include "gdaha/rh_flow.hpp"
#include "support.hpp"

using namespace gdaha;

static void BM_RegularRep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<QComplex> lambda{QComplex(Rational(1, 5)), QComplex(Rational(-2, 7)), QComplex(Rational(3, 11))};
  for (auto _ : state) benchmark::DoNotOptimize(degenerate_regular_rep(n, lambda, QComplex(Rational(1, 3))).dim);
}
BENCHMARK(BM_RegularRep)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_AdditiveDS(benchmark::State& state) {
  auto p = state.range(0) == 0 ? gdaha::testing::d4_params() : gdaha::testing::e6_params();
  auto specs = additive_class_specs(p, 1);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    SolverOptions o;
    o.seed = seed++;
    benchmark::DoNotOptimize(solve_additive_ds(specs, o).residual);
  }
}
BENCHMARK(BM_AdditiveDS)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Transport(benchmark::State& state) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  auto g = default_geometry(4, 1);
  auto conn = fuchsian_connection(sol.matrices, g.alpha);
  auto loop = braid_loop(g, {BraidGenerator::Kind::U, 1});
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parallel_transport(conn, loop, tol, false).steps);
}
BENCHMARK(BM_Transport)->Arg(8)->Arg(11)->Arg(13)->Unit(benchmark::kMillisecond);

static void BM_RiemannHilbert(benchmark::State& state) {
  auto sol = gdaha::testing::solve_rank_one(gdaha::testing::d4_params());
  auto g = default_geometry(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rh_map(sol.matrices, g, 1e-11).product_residual);
}
BENCHMARK(BM_RiemannHilbert)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
