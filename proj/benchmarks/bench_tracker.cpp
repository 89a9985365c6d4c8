#include <benchmark/benchmark.h>

#include <random>

#include "generators.hpp"
#include "pcid/relevance.hpp"

using namespace pcid;

namespace {

// Random push/pop over j-literals and the open end of a chain.
void BM_ChainTracker(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  DefnfTheory t = testing::chainTheory(n);
  JustificationMaps maps = buildJustificationDefinition(t.definition, t.numAtoms);
  RelevanceTracker tracker = RelevanceTracker::forTheory(t, maps);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Atom> anyAtom(1, static_cast<Atom>(maps.numAtoms));
  std::vector<Literal> stack;
  std::vector<bool> assigned(maps.numAtoms + 1, false);
  for (auto _ : state) {
    if (!stack.empty() && (rng() & 1U)) {
      Literal l = stack.back();
      stack.pop_back();
      assigned[l.atom()] = false;
      tracker.notifyBecomesUnknown(l);
    } else {
      Atom a = anyAtom(rng);
      if (assigned[a]) continue;
      Literal l = (rng() & 1U) ? Literal::positive(a) : Literal::negative(a);
      assigned[a] = true;
      stack.push_back(l);
      tracker.notifyBecomesTrue(l);
    }
  }
  state.counters["events/s"] = benchmark::Counter(static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ChainTracker)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_TrackerConstruction(benchmark::State& state) {
  DefnfTheory t = testing::chainTheory(static_cast<std::size_t>(state.range(0)));
  JustificationMaps maps = buildJustificationDefinition(t.definition, t.numAtoms);
  for (auto _ : state) {
    RelevanceTracker tracker = RelevanceTracker::forTheory(t, maps);
    benchmark::DoNotOptimize(tracker.numRelevant());
  }
}
BENCHMARK(BM_TrackerConstruction)->Arg(10000);

}  // namespace
