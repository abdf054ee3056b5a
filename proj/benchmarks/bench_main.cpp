#include <benchmark/benchmark.h>

#include "gridqaoa/analytic.hpp"
#include "gridqaoa/embedding.hpp"
#include "gridqaoa/optimizer.hpp"
#include "gridqaoa/simulator.hpp"

using namespace gridqaoa;

namespace {

Grid grid_for(int qubits) { return squarest_grid(qubits); }

void BM_XLayer(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  StateVector s = plus_state(n);
  const std::vector<double> betas(static_cast<std::size_t>(n), 0.3);
  for (auto _ : st) {
    apply_x_layer(s, betas);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.dimension()));
}
BENCHMARK(BM_XLayer)->Arg(12)->Arg(16)->Arg(20);

void BM_ZZLayer(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Grid g = grid_for(n);
  StateVector s = plus_state(n);
  const std::vector<double> gammas(g.edges().size(), 0.2);
  for (auto _ : st) {
    apply_zz_layer(s, g.edges(), gammas);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.dimension()));
}
BENCHMARK(BM_ZZLayer)->Arg(12)->Arg(16)->Arg(20);

void BM_PrepareState(benchmark::State& st) {
  const Grid g(4, 4);
  const Ansatz a{Layout::of(g), static_cast<int>(st.range(0)), Parameterization::Opened};
  const ParamSchedule sched = a.schedule(random_simplex(a.dimension(), Bounds{}, 1).front());
  StateVector s(16);
  for (auto _ : st) {
    prepare_state_into(s, a.layout, sched);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_PrepareState)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Expectation(benchmark::State& st) {
  const ProblemGraph graph = random_regular_graph(16, 3, 1);
  const std::vector<double> table = objective_from_graph(graph, Assignment::identity(16)).tabulate();
  const StateVector s = prepare_state(Grid(4, 4), two_angle_schedule(Grid(4, 4), 0.5, 0.3));
  for (auto _ : st) benchmark::DoNotOptimize(expectation(s, table));
}
BENCHMARK(BM_Expectation);

void BM_BruteForceMaxCut(benchmark::State& st) {
  const ProblemGraph graph = random_regular_graph(static_cast<int>(st.range(0)), 3, 2);
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_maxcut(graph).value);
}
BENCHMARK(BM_BruteForceMaxCut)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Lightcone(benchmark::State& st) {
  const Grid g(7, 7);
  const AnglePair a{0.5, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(lightcone_expectation(g, g.site(3, 3), g.site(4, 4), a));
}
BENCHMARK(BM_Lightcone);

void BM_GreedyAssignment(benchmark::State& st) {
  const ProblemGraph graph = random_regular_graph(36, 3, 3);
  const Grid g(6, 6);
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(greedy_assignment(graph, g, seed++).sites().data());
}
BENCHMARK(BM_GreedyAssignment);

}  // namespace

BENCHMARK_MAIN();
