#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "pcid/engine.hpp"

using namespace pcid;

namespace {

std::vector<DefnfTheory> corpus(std::size_t maxAtoms) {
  std::mt19937_64 rng(7);
  std::vector<DefnfTheory> out;
  testing::TheoryShape shape{maxAtoms, maxAtoms, 3, 0.35};
  while (out.size() < 50) out.push_back(testing::randomTheory(rng, shape));
  return out;
}

void runCorpus(benchmark::State& state, bool relevance) {
  auto theories = corpus(static_cast<std::size_t>(state.range(0)));
  SolverConfig cfg;
  cfg.relevanceFilter = relevance;
  std::uint64_t decisions = 0;
  for (auto _ : state) {
    for (const auto& t : theories) decisions += solve(t, cfg).stats.decisions;
  }
  state.counters["decisions/run"] =
      benchmark::Counter(static_cast<double>(decisions), benchmark::Counter::kAvgIterations);
}

void BM_SolveRelevanceOn(benchmark::State& state) { runCorpus(state, true); }
void BM_SolveRelevanceOff(benchmark::State& state) { runCorpus(state, false); }
BENCHMARK(BM_SolveRelevanceOn)->Arg(8)->Arg(40)->Arg(200);
BENCHMARK(BM_SolveRelevanceOff)->Arg(8)->Arg(40)->Arg(200);

}  // namespace
