// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All limits and counts are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "pcid/dot.hpp"
#include "pcid/engine.hpp"
#include "pcid/io.hpp"
#include "pcid/oracle.hpp"
#include "pcid/replay.hpp"

using namespace pcid;
using namespace pcid::testing;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024;

constexpr std::size_t kSolverTheories = 500;
constexpr double kSolverSuiteSeconds = 60.0;

constexpr std::size_t kPropagationDefinitions = 300;
constexpr std::size_t kAssignmentsPerDefinition = 4;
constexpr std::size_t kMaxDefinedForPropagation = 12;

constexpr std::size_t kTraces = 200;
constexpr std::size_t kMinTraceEvents = 50;
constexpr std::size_t kExtensionsPerState = 8;

constexpr std::size_t kChainLength = 10000;
constexpr std::size_t kChainEvents = 100000;
constexpr double kChainSeconds = 5.0;

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
  void fail(const std::string& what) {
    check(false, [&] { return what; });
  }
  bool ok() const { return failures == 0 && checks > 0; }
};

int report(int criterion, bool ok, const std::string& summary, const Tally* tally = nullptr) {
  std::printf("criterion %d %s  %s\n", criterion, ok ? "PASS" : "FAIL", summary.c_str());
  if (tally && tally->failures) std::printf("    first failure: %s\n", tally->first.c_str());
  std::fflush(stdout);
  return ok ? 0 : 1;
}

std::string describe(const DefnfTheory& t) { return writeCid(t); }

const char* policyName(EmptyRelevantPolicy p) {
  return p == EmptyRelevantPolicy::Backtrack ? "backtrack" : "fallback";
}

bool clauseHolds(const Clause& c, const PartialInterpretation& extended) {
  for (Literal l : c) {
    if (extended.isTrue(l)) return true;
  }
  return false;
}

// Model over the original atoms extended with j(p) = p.
PartialInterpretation extendWithJustification(const PartialInterpretation& model, const JustificationMaps& maps) {
  PartialInterpretation out(maps.numAtoms);
  for (Atom a = 1; a <= maps.numOriginalAtoms; ++a) {
    out.set(a, model.value(a));
    if (maps.isOriginalDefined(a)) out.set(maps.toJustLit(Literal::positive(a)), model.value(a));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria 1, 5 and the solver half of 7
// ---------------------------------------------------------------------------

struct SolverRuns {
  Tally equivalence;   // 1
  Tally earlyStop;     // 5
  Tally invariants;    // 7
  std::size_t runs = 0;
  std::size_t earlyStops = 0;
  std::size_t filteredDecisions = 0;
  double seconds = 0;
};

SolverRuns runSolverCorpus() {
  SolverRuns out;
  std::mt19937_64 rng(kSeed);
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < kSolverTheories; ++i) {
    DefnfTheory theory = randomTotalTheory(rng, TheoryShape{8, 8, 3, 0.35});
    std::vector<PartialInterpretation> models = oracle::enumerateModels(theory);
    bool satisfiable = !models.empty();
    JustificationMaps maps = buildJustificationDefinition(theory.definition, theory.numAtoms);
    std::vector<PartialInterpretation> extendedModels;
    for (const auto& m : models) extendedModels.push_back(extendWithJustification(m, maps));

    for (bool relevance : {true, false}) {
      for (bool stop : {true, false}) {
        for (auto policy : {EmptyRelevantPolicy::Backtrack, EmptyRelevantPolicy::Fallback}) {
          SolverConfig cfg;
          cfg.relevanceFilter = relevance;
          cfg.stopOnJustified = stop;
          cfg.emptyRelevantPolicy = policy;
          cfg.checkInvariants = true;
          auto where = [&] {
            return "theory #" + std::to_string(i) + " relevance=" + (relevance ? "on" : "off") +
                   " stop=" + (stop ? "on" : "off") + " policy=" + policyName(policy) + "\n" + describe(theory);
          };

          Solver solver(theory, cfg);
          solver.onDecision = [&](Literal l, DecisionSource src, const Solver& s) {
            out.invariants.check(!s.maps().isJustAtom(l.atom()), [&] { return "j-atom decided; " + where(); });
            if (relevance && src == DecisionSource::Heuristic) {
              ++out.filteredDecisions;
              std::set<Literal> rel = oracle::relevantSet(theory, s.witness());
              out.invariants.check(rel.count(l) || rel.count(~l), [&] {
                return "decision " + toString(l) + " not relevant; " + where();
              });
            }
          };
          std::vector<Clause> learned;
          solver.onLearned = [&](const Clause& c) { learned.push_back(c); };

          SolveResult r;
          try {
            r = solver.solve();
          } catch (const std::logic_error& e) {
            out.invariants.fail(std::string(e.what()) + "; " + where());
            out.equivalence.fail("solver aborted; " + where());
            continue;
          }
          ++out.runs;
          SolveStatus expected = satisfiable ? SolveStatus::Sat : SolveStatus::Unsat;
          out.equivalence.check(r.status == expected, [&] {
            return std::string("status ") + (r.status == SolveStatus::Sat ? "sat" : "unsat") + " vs reference; " +
                   where();
          });
          if (r.status == SolveStatus::Sat && !r.stats.stoppedEarly) {
            out.equivalence.check(oracle::isModel(r.witness, theory), [&] { return "witness not a model; " + where(); });
          }
          if (r.status == SolveStatus::Sat && r.stats.stoppedEarly) {
            ++out.earlyStops;
            out.earlyStop.check(satisfiable, [&] { return "early stop on unsatisfiable theory; " + where(); });
            bool justified = oracle::isJustified(Literal::positive(theory.theoryAtom), r.witness, theory);
            out.earlyStop.check(justified, [&] { return "early stop without justified p_T; " + where(); });
            if (justified) {
              std::uint64_t count = oracle::countModelsExtending(theory, r.witness);
              out.earlyStop.check(r.modelsRepresented && *r.modelsRepresented == count, [&] {
                return "reported " + std::to_string(r.modelsRepresented.value_or(0)) + " models, reference " +
                       std::to_string(count) + "; " + where();
              });
            }
          }
          for (const Clause& c : learned) {
            for (const auto& m : extendedModels) {
              out.equivalence.check(clauseHolds(c, m), [&] { return "learned clause excludes a model; " + where(); });
            }
          }
        }
      }
    }
  }
  out.seconds = secondsSince(t0);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 2
// ---------------------------------------------------------------------------

Tally runPropagationCorpus(std::size_t& assignments) {
  Tally tally;
  std::mt19937_64 rng(kSeed + 2);
  TheoryShape shape{14, kMaxDefinedForPropagation, 3, 0.35};
  for (std::size_t i = 0; i < kPropagationDefinitions; ++i) {
    DefnfTheory t = randomTotalTheory(rng, shape);
    for (std::size_t k = 0; k < kAssignmentsPerDefinition; ++k) {
      ++assignments;
      PartialInterpretation opens = randomOpenAssignment(rng, t);
      auto where = [&] { return "definition #" + std::to_string(i) + " assignment #" + std::to_string(k) + "\n" + describe(t); };
      SolverConfig cfg;
      cfg.relevanceFilter = false;
      Solver s(t, cfg, false);
      bool ok = s.propagate();
      for (Atom a : t.definition.opens(t.numAtoms)) {
        if (!ok || opens.isUnknown(a)) continue;
        Literal l = literalFor(a, opens.value(a));
        if (s.value(l) == TruthValue::True) continue;
        ok = s.assume(l) && s.propagate();
      }
      tally.check(ok, [&] { return "conflict while assigning opens; " + where(); });
      if (!ok) continue;
      for (Atom p : t.definition.defined()) {
        TruthValue want = TruthValue::Unknown;
        switch (oracle::justifiedStatus(p, opens, t)) {
          case oracle::JustifiedStatus::True: want = TruthValue::True; break;
          case oracle::JustifiedStatus::False: want = TruthValue::False; break;
          case oracle::JustifiedStatus::Unknown: break;
        }
        Literal j = s.maps().toJustLit(Literal::positive(p));
        tally.check(s.value(p) == want && s.value(j) == want, [&] {
          return "atom " + std::to_string(p) + ": propagated " + toChar(s.value(p)) + "/" + toChar(s.value(j)) +
                 ", justified status " + toChar(want) + "; " + where();
        });
      }
    }
  }
  return tally;
}

// ---------------------------------------------------------------------------
// Criteria 3, 6 and the tracker half of 7
// ---------------------------------------------------------------------------

struct TraceRuns {
  Tally exactness;     // 3
  Tally choice;        // 6
  Tally invariants;    // 7
  std::size_t events = 0;
  std::size_t quiescent = 0;
  std::size_t flips = 0;
};

void checkChoiceProperty(const DefnfTheory& t, const PartialInterpretation& state, std::mt19937_64& rng,
                         TraceRuns& out) {
  Literal pT = Literal::positive(t.theoryAtom);
  std::set<Literal> rel = oracle::relevantSet(t, state);
  std::vector<Atom> unknownOpens;
  for (Atom a : t.definition.opens(t.numAtoms)) {
    if (state.isUnknown(a)) unknownOpens.push_back(a);
  }
  std::vector<PartialInterpretation> extensions;
  std::uniform_int_distribution<int> v(0, 2);
  for (std::size_t k = 0; k < kExtensionsPerState; ++k) {
    PartialInterpretation ext = state;
    for (Atom a : unknownOpens) ext.set(a, static_cast<TruthValue>(v(rng)));
    if (oracle::isJustified(pT, ext, t)) extensions.push_back(std::move(ext));
  }
  if (extensions.empty()) return;
  for (Atom a = 1; a <= t.numAtoms; ++a) {
    if (!state.isUnknown(a)) continue;
    // Irrelevant means neither polarity is relevant: with p_T <- a, the
    // literal ~a alone is outside the relevant set yet a:f breaks p_T.
    if (rel.count(Literal::positive(a)) || rel.count(Literal::negative(a))) continue;
    for (Literal l : {Literal::positive(a), Literal::negative(a)}) {
      for (const auto& ext : extensions) {
        for (TruthValue val : {TruthValue::False, TruthValue::True}) {
          PartialInterpretation flipped = ext;
          flipped.set(l, val);
          ++out.flips;
          out.choice.check(oracle::isJustified(pT, flipped, t), [&] {
            return "p_T loses justification when " + toString(l) + " set to " + toChar(val) + "\n" + describe(t);
          });
        }
      }
    }
  }
}

TraceRuns runTraceCorpus() {
  TraceRuns out;
  std::mt19937_64 rng(kSeed + 3);
  for (std::size_t i = 0; i < kTraces; ++i) {
    DefnfTheory t = randomTotalTheory(rng, TheoryShape{8, 8, 3, 0.35});
    JustificationMaps maps = buildJustificationDefinition(t.definition, t.numAtoms);
    GeneratedTrace trace = randomSyncedTrace(rng, t, maps, kMinTraceEvents);
    auto where = [&](std::size_t e) { return "trace #" + std::to_string(i) + " event " + std::to_string(e) + "\n" + describe(t); };

    Replayer replayer(t);
    std::string initial = trackerFingerprint(replayer.tracker(), t.numAtoms);
    std::set<std::size_t> syncPoints(trace.syncPoints.begin(), trace.syncPoints.end());
    std::vector<Literal> assigned;
    ReplayOptions opts;
    opts.checkInvariants = true;
    ReplayReport rep;

    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      const TraceEvent& ev = trace.events[e];
      std::size_t before = rep.failures.size();
      replayer.apply(ev, rep, opts);
      ++out.events;
      for (std::size_t f = before; f < rep.failures.size(); ++f) out.invariants.fail(rep.failures[f] + "; " + where(e));
      if (ev.kind == TraceEvent::Kind::BecomesTrue) assigned.push_back(ev.literal);
      else std::erase_if(assigned, [&](Literal l) { return l.atom() == ev.literal.atom(); });

      if (syncPoints.count(e + 1)) {
        ++out.quiescent;
        out.exactness.check(replayer.synchronized(), [&] { return "generator lost synchronization; " + where(e); });
        auto mismatch = replayer.oracleMismatch();
        out.exactness.check(!mismatch, [&] { return *mismatch + "; " + where(e); });
        PartialInterpretation state(t.numAtoms);
        for (Atom a = 1; a <= t.numAtoms; ++a) state.set(a, replayer.interpretation().value(a));
        checkChoiceProperty(t, state, rng, out);
      } else {
        auto mismatch = replayer.oracleMismatch();
        out.exactness.check(!mismatch, [&] { return *mismatch + "; " + where(e); });
      }
    }
    // Reversibility: undo everything still assigned, newest first.
    while (!assigned.empty()) {
      replayer.apply(TraceEvent{TraceEvent::Kind::BecomesUnknown, assigned.back(), std::nullopt, 0}, rep, opts);
      assigned.pop_back();
    }
    out.invariants.check(trackerFingerprint(replayer.tracker(), t.numAtoms) == initial,
                         [&] { return "state differs after full unwind; " + where(trace.events.size()); });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4
// ---------------------------------------------------------------------------

Tally runGoldenChecks() {
  Tally tally;

  // (a) Justification definition of the c1..c4 definition.
  {
    DefnfTheory t = parseCid(
        "p cid 11\nt 1\n"
        "r 1 c 2 3 4 5 0\nr 2 d -8 -10 0\nr 3 d 7 8 -9 0\n"
        "r 4 d -8 11 -6 0\nr 5 d 10 6 -7 0\nr 6 d 8 10 0\n");
    JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
    Definition expected;
    auto L = [](int v) { return Literal::fromDimacs(v); };
    expected.add(Rule{12, Connective::And, {L(13), L(14), L(15), L(16)}});
    expected.add(Rule{13, Connective::Or, {L(-8), L(-10)}});
    expected.add(Rule{14, Connective::Or, {L(7), L(8), L(-9)}});
    expected.add(Rule{15, Connective::Or, {L(-8), L(11), L(-17)}});
    expected.add(Rule{16, Connective::Or, {L(10), L(17), L(-7)}});
    expected.add(Rule{17, Connective::Or, {L(8), L(10)}});
    tally.check(m.deltaJ == expected, [&] { return "justification definition differs:\n" + writeCid(DefnfTheory{17, 12, m.deltaJ, {}}); });
    tally.check(m.numAtoms == 17, [&] { return "expected 6 justification atoms"; });
  }

  // (b) The four-rule theory.
  {
    DefnfTheory t = parseCid(
        "p cid 10\nt 1\n"
        "r 1 c 2 3 0\nr 2 d 5 -6 7 0\nr 3 d 4 -8 9 0\nr 6 d 7 -9 10 0\n");
    PartialInterpretation I(t.numAtoms);
    for (Atom a : {1, 2, 3, 4, 5}) I.makeTrue(Literal::positive(a));
    tally.check(oracle::isJustified(Literal::positive(1), I, t), [] { return "p_T not justified under p_T,a,b,c,d"; });

    SolverConfig cfg;
    cfg.stopOnJustified = false;
    Solver s(t, cfg);
    bool ok = s.propagate();
    const RelevanceTracker& tr = *s.tracker();
    tally.check(ok && tr.isRelevant(Literal::negative(6)), [] { return "~e should start relevant"; });
    ok = ok && s.assume(Literal::positive(5)) && s.propagate();
    tally.check(ok && !tr.isRelevant(Literal::negative(6)) && !tr.isRelevant(Literal::positive(6)),
                [] { return "e still relevant after d:t"; });
    ok = ok && s.assume(Literal::positive(4)) && s.propagate();
    tally.check(ok && s.theoryJustified() && s.reportJustifiedCount() == 16,
                [] { return "p_T not justified after c:t, or count differs from 16"; });
    tally.check(tr.numRelevant() == 0, [] { return "relevant literals remain after p_T justified"; });
  }

  // (c) The p/q loop.
  {
    DefnfTheory t = parseCid("p cid 4\nt 1\nr 1 d 2 3 0\nr 3 c 4 0\nr 4 c 3 0\n");
    JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
    RelevanceTracker tr = RelevanceTracker::forTheory(t, m);
    Literal pT = Literal::positive(1), a = Literal::positive(2), p = Literal::positive(3), q = Literal::positive(4);
    auto parents = [&](Literal l) {
      auto s = tr.graph().parents(l);
      return std::set<Literal>(s.begin(), s.end());
    };
    tally.check(parents(p) == std::set<Literal>{pT, q} && parents(q) == std::set<Literal>{p},
                [] { return "candidate parents differ from {p_T,q} / {p}"; });
    tally.check(tr.watchedParent(p) == pT && tr.watchedParent(q) == p, [] { return "initial watches differ"; });
    tally.check(tr.relevantLiterals() == std::vector<Literal>{pT, a, p, q}, [] { return "initial relevant set differs"; });
    tally.check(!tr.findNonCyclicWatch(p, pT), [] { return "q accepted as a watch for p"; });

    tr.notifyBecomesTrue(a);
    tr.notifyBecomesTrue(m.toJustLit(pT));
    std::uint64_t regions = tr.stats().regionRecomputations;
    for (Literal l : {pT, a, p, q}) {
      tally.check(!tr.isRelevant(l), [&] { return "literal " + toString(l) + " still relevant after a:t"; });
    }
    tally.check(regions > 0, [] { return "loop p/q was not handled by a region recomputation"; });
    tally.check(!tr.checkInvariants(), [&] { return *tr.checkInvariants(); });
    std::string dot = exportDot(tr.snapshot());
    tally.check(dot.find("\"3\" -> \"4\" [style=dashed]") != std::string::npos &&
                    dot.find("\"4\" -> \"3\" [style=dashed]") != std::string::npos,
                [&] { return "remaining loop not drawn dashed:\n" + dot; });

    Solver s(t);
    SolveResult r = s.solve();
    tally.check(r.status == SolveStatus::Sat && r.witness.isTrue(a) && r.modelsRepresented == 1u,
                [] { return "solver should stop with a:t and one model"; });
  }
  return tally;
}

// ---------------------------------------------------------------------------
// Criterion 8
// ---------------------------------------------------------------------------

struct ChainRun {
  double seconds = 0;
  std::size_t events = 0;
  std::optional<std::string> invariant;
};

ChainRun runChain() {
  DefnfTheory t = chainTheory(kChainLength);
  JustificationMaps maps = buildJustificationDefinition(t.definition, t.numAtoms);
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_int_distribution<Atom> anyAtom(1, static_cast<Atom>(maps.numAtoms));
  std::bernoulli_distribution coin(0.5);
  std::vector<TraceEvent> events;
  std::vector<Literal> assigned;
  std::vector<bool> isAssigned(maps.numAtoms + 1, false);
  while (events.size() < kChainEvents) {
    if (!assigned.empty() && (coin(rng) || assigned.size() > maps.numAtoms / 2)) {
      std::size_t k = coin(rng) ? assigned.size() - 1
                                : std::uniform_int_distribution<std::size_t>(0, assigned.size() - 1)(rng);
      Literal l = assigned[k];
      assigned[k] = assigned.back();
      assigned.pop_back();
      isAssigned[l.atom()] = false;
      events.push_back(TraceEvent{TraceEvent::Kind::BecomesUnknown, l, std::nullopt, 0});
    } else {
      Atom a = anyAtom(rng);
      if (isAssigned[a]) continue;
      Literal l = coin(rng) ? Literal::positive(a) : Literal::negative(a);
      isAssigned[a] = true;
      assigned.push_back(l);
      events.push_back(TraceEvent{TraceEvent::Kind::BecomesTrue, l, std::nullopt, 0});
    }
  }
  std::string text = writeTrace(events);

  ChainRun out;
  auto t0 = Clock::now();
  Replayer replayer(t);
  ReplayReport rep = replayer.run(parseTrace(text));
  out.seconds = secondsSince(t0);
  out.events = rep.events;
  out.invariant = replayer.tracker().checkInvariants();
  return out;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

int main() {
  int failed = 0;

  SolverRuns solver = runSolverCorpus();
  failed += report(1, solver.equivalence.ok() && solver.seconds < kSolverSuiteSeconds,
                   std::to_string(kSolverTheories) + " theories x 8 configs (" + std::to_string(solver.runs) +
                       " runs), " + std::to_string(solver.equivalence.failures) + " mismatches, " +
                       fmt("%.1f s", solver.seconds) + fmt(" (limit %.0f s)", kSolverSuiteSeconds),
                   &solver.equivalence);

  std::size_t assignments = 0;
  Tally propagation = runPropagationCorpus(assignments);
  failed += report(2, propagation.ok(),
                   std::to_string(kPropagationDefinitions) + " definitions, " + std::to_string(assignments) +
                       " open assignments, " + std::to_string(propagation.failures) + " mismatches over " +
                       std::to_string(propagation.checks) + " atoms",
                   &propagation);

  TraceRuns traces = runTraceCorpus();
  failed += report(3, traces.exactness.ok(),
                   std::to_string(kTraces) + " traces, " + std::to_string(traces.events) + " events, " +
                       std::to_string(traces.quiescent) + " quiescent points, " +
                       std::to_string(traces.exactness.failures) + " mismatches",
                   &traces.exactness);

  Tally golden = runGoldenChecks();
  failed += report(4, golden.ok(),
                   std::to_string(golden.checks) + " golden checks, " + std::to_string(golden.failures) + " failed",
                   &golden);

  failed += report(5, solver.earlyStop.ok(),
                   std::to_string(solver.earlyStops) + " early stops, " + std::to_string(solver.earlyStop.failures) +
                       " count or satisfiability mismatches",
                   &solver.earlyStop);

  failed += report(6, traces.choice.ok(),
                   std::to_string(traces.flips) + " flips of unknown irrelevant literals, " +
                       std::to_string(traces.choice.failures) + " violations",
                   &traces.choice);

  Tally invariants = solver.invariants;
  invariants.checks += traces.invariants.checks;
  invariants.failures += traces.invariants.failures;
  if (invariants.first.empty()) invariants.first = traces.invariants.first;
  failed += report(7, invariants.ok(),
                   std::to_string(invariants.checks) + " invariant checks (" + std::to_string(solver.filteredDecisions) +
                       " filtered decisions), " + std::to_string(invariants.failures) + " violations",
                   &invariants);

  ChainRun chain = runChain();
  failed += report(8, !chain.invariant && chain.events == kChainEvents && chain.seconds < kChainSeconds,
                   std::to_string(chain.events) + " events over a " + std::to_string(kChainLength) +
                       "-atom chain in " + fmt("%.2f s", chain.seconds) + fmt(" (limit %.0f s)", kChainSeconds) +
                       (chain.invariant ? "; invariant: " + *chain.invariant : std::string()));

  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
