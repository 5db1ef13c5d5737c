#include <benchmark/benchmark.h>

#include <numeric>

#include "ddpp/bramble.hpp"
#include "ddpp/flow.hpp"
#include "ddpp/gadget.hpp"
#include "ddpp/linker.hpp"
#include "ddpp/oracle.hpp"
#include "support.hpp"

namespace {

using namespace ddpp;

void BM_MaxDisjointPaths(benchmark::State& state) {
  testing::Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const Digraph g = testing::random_digraph(n, 8.0 / n, rng);
  const VertexSet s = make_set(testing::sample(n, n / 8, rng));
  VertexSet t = set_difference(make_set(testing::sample(n, n / 4, rng)), s);
  for (auto _ : state) benchmark::DoNotOptimize(max_disjoint_paths(g, s, t).count());
}
BENCHMARK(BM_MaxDisjointPaths)->RangeMultiplier(4)->Range(64, 4096);

void BM_StrongConnectivityGrid(benchmark::State& state) {
  const Grid grid = gen_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(strong_connectivity(grid.graph));
}
BENCHMARK(BM_StrongConnectivityGrid)->DenseRange(4, 10, 3);

// (x1) ∧ (¬x1): the search has to exhaust the tree to say no.
void BM_OracleContradiction(benchmark::State& state) {
  const CnfFormula f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", true);
  const Gadget gadget = build_gadget(f, Rational{1, 4});
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_linkage(gadget.instance, 2).nodes);
}
BENCHMARK(BM_OracleContradiction)->Unit(benchmark::kMillisecond);

void BM_BuildGadget(benchmark::State& state) {
  CnfFormula f;
  f.variable_count = static_cast<int>(state.range(0));
  for (int j = 0; j < 2 * f.variable_count; ++j) {
    const int a = j % f.variable_count + 1;
    const int b = (j + 1) % f.variable_count + 1;
    const int c = (j + 2) % f.variable_count + 1;
    f.clauses.push_back({Literal{a, true}, Literal{b, j % 2 == 0}, Literal{c, false}});
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_gadget(f, Rational{1, 2}).instance.graph.edge_count());
}
BENCHMARK(BM_BuildGadget)->RangeMultiplier(4)->Range(4, 64);

void BM_GridBrambleAndHittingPath(benchmark::State& state) {
  const Grid grid = gen_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Bramble b = grid_bramble(grid.graph, grid.labels);
    benchmark::DoNotOptimize(hitting_path(grid.graph, b).size());
  }
}
BENCHMARK(BM_GridBrambleAndHittingPath)->DenseRange(4, 16, 4);

void BM_SolveWithBramble(benchmark::State& state) {
  testing::Rng rng(6000);
  testing::PlantedShape shape;
  shape.k = static_cast<int>(state.range(0));
  shape.bags = 4 * shape.k + 2;
  shape.bag_length = 3 * shape.k;
  shape.extra = 1;
  shape.terminal_density = 0.45;
  shape.gateway = true;
  const auto planted = testing::planted_instance(shape, rng);
  LinkerConfig cfg;
  cfg.relaxed = true;
  for (auto _ : state) benchmark::DoNotOptimize(solve_with_bramble(planted.instance, planted.bramble, cfg).solved());
}
BENCHMARK(BM_SolveWithBramble)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
