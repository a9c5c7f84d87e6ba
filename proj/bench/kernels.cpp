// Serial reference kernels against the tabulating / OpenMP ones.
// Thread count follows MODELGLASS_THREADS (or OMP_NUM_THREADS).
#include <benchmark/benchmark.h>

#include "modelglass/ax.hpp"
#include "modelglass/eval.hpp"
#include "modelglass/graph.hpp"
#include "modelglass/parallel.hpp"
#include "modelglass/parser.hpp"
#include "modelglass/regularity.hpp"
#include "modelglass/ultraproduct.hpp"

namespace mg = modelglass;

namespace {

const char* kFormula = "exists z. ((x + z = y) & forall w. (w * z = z -> (w = 1 | z = 0)))";

void solution_set_reference(benchmark::State& state) {
  mg::Model m = mg::cyclic_ring(static_cast<std::size_t>(state.range(0)));
  mg::Formula f = mg::parse_formula(kFormula, m.signature());
  for (auto _ : state) benchmark::DoNotOptimize(mg::reference::solution_set(m, f, {"x", "y"}));
}

void solution_set_engine(benchmark::State& state) {
  mg::Model m = mg::cyclic_ring(static_cast<std::size_t>(state.range(0)));
  mg::Formula f = mg::parse_formula(kFormula, m.signature());
  for (auto _ : state) benchmark::DoNotOptimize(mg::solution_set(m, f, {"x", "y"}));
}

// A random pair is regular often enough that the whole subset space is
// scanned, which is the expensive case.
struct PairInput {
  mg::Graph g;
  std::vector<mg::Vertex> x, y;
};

PairInput pair_input(std::size_t side) {
  PairInput in{mg::generators::random_graph(2 * side, 1, 2, 7), {}, {}};
  for (mg::Vertex v = 0; v < side; ++v) {
    in.x.push_back(v);
    in.y.push_back(static_cast<mg::Vertex>(side + v));
  }
  return in;
}

void regular_pair_serial(benchmark::State& state) {
  auto in = pair_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mg::regular_pair_exact_serial(in.g, in.x, in.y, mg::Rational(1, 2)));
  }
}

void regular_pair_parallel(benchmark::State& state) {
  auto in = pair_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mg::regular_pair_exact(in.g, in.x, in.y, mg::Rational(1, 2)));
}

void ax_reference(benchmark::State& state) {
  mg::Formula s = mg::build_ax_sentence(1, 2);
  mg::Model f = mg::prime_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mg::reference::eval_formula(f, s, {}));
}

void ax_engine(benchmark::State& state) {
  mg::Formula s = mg::build_ax_sentence(1, 2);
  mg::Model f = mg::prime_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mg::eval_formula(f, s, {}));
}

}  // namespace

BENCHMARK(solution_set_reference)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(solution_set_engine)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(regular_pair_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(regular_pair_parallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(ax_reference)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(ax_engine)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  mg::apply_thread_limit_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
