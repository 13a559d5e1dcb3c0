#include <benchmark/benchmark.h>

#include "rigidlab/bounds.hpp"
#include "rigidlab/coupler.hpp"
#include "rigidlab/families.hpp"
#include "rigidlab/graph.hpp"
#include "rigidlab/henneberg.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/solver.hpp"

using namespace rigidlab;

namespace {

void BM_PebbleGame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = random_henneberg1_graph(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(laman_check(g));
  state.SetComplexityN(n);
}
BENCHMARK(BM_PebbleGame)->RangeMultiplier(2)->Range(8, 512)->Complexity();

void BM_HennebergExtract(benchmark::State& state) {
  const Graph g = random_henneberg1_graph(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(extract_sequence(g));
}
BENCHMARK(BM_HennebergExtract)->Arg(8)->Arg(16)->Arg(32);

void BM_ExactRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexChain chain = simplex_chain(2, n, 3);
  const auto m = rigidity_matrix(chain.framework.graph(), chain.embedding);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(m));
}
BENCHMARK(BM_ExactRank)->Arg(6)->Arg(10)->Arg(16);

void BM_GenericRank(benchmark::State& state) {
  const Graph g = random_henneberg1_graph(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(generic_rank(g, 2, 1));
}
BENCHMARK(BM_GenericRank)->Arg(8)->Arg(16)->Arg(32);

void BM_CmDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cm_degree(2, n));
    benchmark::DoNotOptimize(cm_degree(3, n));
  }
}
BENCHMARK(BM_CmDegree)->Arg(10)->Arg(40)->Arg(100);

void BM_BranchSolve(benchmark::State& state) {
  const Framework fw = fan_triangulation(static_cast<int>(state.range(0)), 2);
  const auto seq = extract_sequence(fw.graph(), {.type_i_only = true});
  for (auto _ : state) benchmark::DoNotOptimize(solve_branch(fw, *seq));
}
BENCHMARK(BM_BranchSolve)->Arg(6)->Arg(9)->Arg(12);

void BM_NewtonDesargues(benchmark::State& state) {
  const Framework fw = desargues_witness();
  SolverConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_newton(fw, cfg));
}
BENCHMARK(BM_NewtonDesargues)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_CircleCrossings(benchmark::State& state) {
  const DesarguesParams p = desargues_params(desargues_witness());
  const Point2 apex = p.apex_positions().front();
  const Circle c{apex, p.radius};
  for (auto _ : state) benchmark::DoNotOptimize(circle_crossings(p.mechanism, Branch::plus, c));
}
BENCHMARK(BM_CircleCrossings);

void BM_DesarguesCount(benchmark::State& state) {
  const DesarguesParams p = desargues_params(desargues_witness());
  for (auto _ : state) benchmark::DoNotOptimize(desargues_count(p));
}
BENCHMARK(BM_DesarguesCount)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
