#include <benchmark/benchmark.h>

#include "wlgnn/corpora.hpp"
#include "wlgnn/evaluate.hpp"
#include "wlgnn/formula_pool.hpp"
#include "wlgnn/gc2_compiler.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/gnn.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/refinement_fast.hpp"
#include "wlgnn/wl.hpp"
#include "wlgnn/wl_gnn.hpp"

using namespace wlgnn;

namespace {

Graph sparse_graph(std::size_t n) { return gnp(n, 10.0 / static_cast<double>(n), 42); }

void BM_ColourRefinementFast(benchmark::State& state) {
  const Graph g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(colour_refinement_fast(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ColourRefinementFast)->RangeMultiplier(4)->Range(1 << 10, 1 << 17)->Complexity();

void BM_ColourRefinementNaive(benchmark::State& state) {
  const Graph g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ColourInterner interner;
    WlOptions o;
    o.interner = &interner;
    benchmark::DoNotOptimize(colour_refinement(g, o));
  }
}
BENCHMARK(BM_ColourRefinementNaive)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_WlK(benchmark::State& state) {
  const Graph g = rook4x4();
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ColourInterner interner;
    WlOptions o;
    o.interner = &interner;
    benchmark::DoNotOptimize(wl(g, k, o));
  }
}
BENCHMARK(BM_WlK)->DenseRange(1, 3);

void BM_ObliviousWl3(benchmark::State& state) {
  const Graph g = shrikhande();
  for (auto _ : state) {
    ColourInterner interner;
    WlOptions o;
    o.interner = &interner;
    benchmark::DoNotOptimize(owl(g, 3, o));
  }
}
BENCHMARK(BM_ObliviousWl3);

void BM_RandomGnn(benchmark::State& state) {
  RandomModelOptions mo;
  mo.depth = 4;
  mo.hidden = 8;
  mo.mode = state.range(1) ? NumericMode::Float64 : NumericMode::Rational;
  mo.activation = state.range(1) ? Activation::Sig : Activation::ReLU;
  const GnnModel m = random_model(mo, 7);
  const Graph g = sparse_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run(m, g));
}
BENCHMARK(BM_RandomGnn)->ArgsProduct({{256, 4096}, {0, 1}});

void BM_WlGnnConstruction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GnnModel m = build_wl_gnn(n, 1);
  Rng rng(5);
  const Graph g = random_labelled_graph(n, 0.3, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run(m, g));
}
BENCHMARK(BM_WlGnnConstruction)->DenseRange(4, 16, 4);

void BM_CompileAndCertify(benchmark::State& state) {
  const auto corpus = certification_corpus(50, 2);
  const Formula f = example_busy_neighbour_formula();
  for (auto _ : state) benchmark::DoNotOptimize(certify(compile_formula(f, 1), corpus));
}
BENCHMARK(BM_CompileAndCertify);

void BM_EvaluateFormula(benchmark::State& state) {
  const Graph g = hub_tree({12, 12, 11});
  const Formula f = example_busy_neighbour_formula();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(f, g, "x"));
}
BENCHMARK(BM_EvaluateFormula);

}  // namespace

BENCHMARK_MAIN();
