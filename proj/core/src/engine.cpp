#include "pcid/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcid/error.hpp"

namespace pcid {

namespace {
constexpr double kActivityDecay = 0.95;
constexpr std::uint64_t kRestartBase = 64;
constexpr std::uint32_t kNoClause = UINT32_MAX;
}  // namespace

std::uint64_t luby(std::uint64_t i) {
  // Find the finite subsequence containing i and its size.
  std::uint64_t size = 1;
  std::uint64_t seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  std::uint64_t x = i;
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::uint64_t{1} << seq;
}

Solver::Solver(const DefnfTheory& theory, SolverConfig cfg, bool assertTheoryAtom)
    : theory_(theory),
      cfg_(cfg),
      maps_(buildJustificationDefinition(theory.definition, theory.numAtoms)),
      numAtoms_(maps_.numAtoms) {
  theory_.validate();
  for (const Rule& r : theory_.definition.rules()) combined_.add(r);
  for (const Rule& r : maps_.deltaJ.rules()) combined_.add(r);
  justRoot_ = maps_.toJustLit(Literal::positive(theory_.theoryAtom));

  std::size_t lits = 2 * (numAtoms_ + 1);
  watches_.resize(lits);
  values_.assign(numAtoms_ + 1, TruthValue::Unknown);
  level_.assign(numAtoms_ + 1, 0);
  reasonKind_.assign(numAtoms_ + 1, ReasonKind::None);
  reasonClause_.assign(numAtoms_ + 1, kNoClause);
  loopReason_.resize(numAtoms_ + 1);
  ruleOf_.assign(numAtoms_ + 1, nullptr);
  occ_.resize(lits);
  sourced_.assign(numAtoms_ + 1, false);
  sourceLit_.assign(numAtoms_ + 1, Literal());
  isCandidate_.assign(numAtoms_ + 1, false);
  activity_.assign(numAtoms_ + 1, 0.0);
  heapPos_.assign(numAtoms_ + 1, -1);
  phase_.assign(numAtoms_ + 1, false);
  seen_.assign(numAtoms_ + 1, false);

  for (const Rule& r : combined_.rules()) {
    ruleOf_[r.head] = &r;
    for (Literal l : r.body) occ_[l.index()].push_back(r.head);
    pushCandidate(r.head);
  }
  for (auto& heads : occ_) {
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  }

  if (cfg_.seed != 0) {
    std::mt19937_64 rng(cfg_.seed);
    std::uniform_real_distribution<double> noise(0.0, 1e-5);
    for (Atom a = 1; a <= numAtoms_; ++a) activity_[a] = noise(rng);
  }
  for (Atom a = 1; a <= numAtoms_; ++a) {
    if (!maps_.isJustAtom(a)) heapInsert(a);
  }

  if (cfg_.relevanceFilter) {
    tracker_ = std::make_unique<RelevanceTracker>(maps_, theory_.theoryAtom);
    for (const Rule& r : theory_.definition.rules()) tracker_->notifyNewRule(r);
    tracker_->seal();
  }

  for (Clause& c : completionClauses(combined_)) addClause(std::move(c), false);
  if (assertTheoryAtom) addClause({Literal::positive(theory_.theoryAtom)}, false);
  numOriginalClauses_ = clauses_.size();
}

// ---------------------------------------------------------------------------
// Clauses and assignment
// ---------------------------------------------------------------------------

void Solver::addClause(Clause c, bool learned) {
  if (!learned) {
    // Repeated literals stay: collapsing h | h to the unit h would derive
    // literals that have no justification.
    std::sort(c.begin(), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (c[i] == ~c[i - 1]) return;  // tautology
    }
  }
  if (c.empty()) {
    unsat_ = true;
    return;
  }
  auto idx = static_cast<std::uint32_t>(clauses_.size());
  clauses_.push_back(std::move(c));
  const Clause& cl = clauses_.back();
  if (cl.size() == 1) {
    if (learned) return;  // enqueued by the caller
    if (value(cl[0]) == TruthValue::False) unsat_ = true;
    else if (value(cl[0]) == TruthValue::Unknown) enqueue(cl[0], ReasonKind::Clause, idx);
    return;
  }
  watches_[cl[0].index()].push_back(idx);
  watches_[cl[1].index()].push_back(idx);
}

void Solver::enqueue(Literal l, ReasonKind kind, std::uint32_t clause) {
  Atom a = l.atom();
  values_[a] = l.isPositive() ? TruthValue::True : TruthValue::False;
  level_[a] = decisionLevel();
  reasonKind_[a] = kind;
  reasonClause_[a] = clause;
  trail_.push_back(l);
  ++stats_.propagations;
  if (tracker_) tracker_->notifyBecomesTrue(l);
}

const Clause& Solver::reasonOf(Atom a) const {
  if (reasonKind_[a] == ReasonKind::Loop) return loopReason_[a];
  return clauses_[reasonClause_[a]];
}

bool Solver::isDecision(Atom a) const {
  return value(a) != TruthValue::Unknown && reasonKind_[a] == ReasonKind::None;
}

void Solver::newDecision(Literal l, bool flipped) {
  if (maps_.isJustAtom(l.atom())) throw std::logic_error("decision on a justification atom");
  trailLim_.push_back(trail_.size());
  flipped_.push_back(flipped);
  enqueue(l, ReasonKind::None, kNoClause);
}

bool Solver::assume(Literal l) {
  if (value(l) == TruthValue::False) return false;
  ++stats_.decisions;
  if (onDecision) onDecision(l, DecisionSource::Assumption, *this);
  newDecision(l, false);
  return true;
}

void Solver::backtrackTo(std::size_t level) {
  if (level >= decisionLevel()) return;
  std::size_t lim = trailLim_[level];
  while (trail_.size() > lim) {
    Literal l = trail_.back();
    trail_.pop_back();
    Atom a = l.atom();
    phase_[a] = l.isPositive();
    values_[a] = TruthValue::Unknown;
    reasonKind_[a] = ReasonKind::None;
    reasonClause_[a] = kNoClause;
    if (tracker_) tracker_->notifyBecomesUnknown(l);
    if (!maps_.isJustAtom(a) && !inHeap(a)) heapInsert(a);
    if (ruleOf_[a] && !sourced_[a]) pushCandidate(a);
  }
  trailLim_.resize(level);
  flipped_.resize(level);
  qhead_ = std::min(qhead_, trail_.size());
  ufHead_ = std::min(ufHead_, trail_.size());
}

// ---------------------------------------------------------------------------
// Propagation
// ---------------------------------------------------------------------------

bool Solver::propagateUnit() {
  while (qhead_ < trail_.size()) {
    Literal falseLit = ~trail_[qhead_++];
    auto& ws = watches_[falseLit.index()];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      std::uint32_t ci = ws[i++];
      Clause& c = clauses_[ci];
      if (c[0] == falseLit) std::swap(c[0], c[1]);
      if (value(c[0]) == TruthValue::True) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != TruthValue::False) {
          std::swap(c[1], c[k]);
          watches_[c[1].index()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == TruthValue::False) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        conflict_ = c;
        return false;
      }
      enqueue(c[0], ReasonKind::Clause, ci);
    }
    ws.resize(j);
  }
  return true;
}

bool Solver::validSupport(Literal l) const {
  if (value(l) == TruthValue::False) return false;
  return !(l.isPositive() && ruleOf_[l.atom()] && !sourced_[l.atom()]);
}

void Solver::pushCandidate(Atom a) {
  if (!isCandidate_[a]) {
    isCandidate_[a] = true;
    candidates_.push_back(a);
  }
}

void Solver::unsource(Atom start) {
  std::vector<Atom> stack{start};
  sourced_[start] = false;
  pushCandidate(start);
  while (!stack.empty()) {
    Atom a = stack.back();
    stack.pop_back();
    Literal pos = Literal::positive(a);
    for (Atom h : occ_[pos.index()]) {
      if (!sourced_[h]) continue;
      if (ruleOf_[h]->isConjunctive() || sourceLit_[h] == pos) {
        sourced_[h] = false;
        pushCandidate(h);
        stack.push_back(h);
      }
    }
  }
}

bool Solver::trySource(Atom a) {
  const Rule& r = *ruleOf_[a];
  if (r.isConjunctive()) {
    for (Literal l : r.body) {
      if (!validSupport(l)) return false;
    }
    sourced_[a] = true;
    return true;
  }
  for (Literal l : r.body) {
    if (validSupport(l)) {
      sourced_[a] = true;
      sourceLit_[a] = l;
      return true;
    }
  }
  return false;
}

bool Solver::propagateUnfounded() {
  // Invalidate sources that rest on literals falsified since the last round.
  for (; ufHead_ < trail_.size(); ++ufHead_) {
    Literal falseLit = ~trail_[ufHead_];
    for (Atom h : occ_[falseLit.index()]) {
      if (!sourced_[h]) continue;
      if (ruleOf_[h]->isConjunctive() || sourceLit_[h] == falseLit) unsource(h);
    }
  }
  if (candidates_.empty()) return true;

  // Re-source to fixpoint.
  std::vector<Atom> work;
  for (Atom a : candidates_) {
    if (!sourced_[a] && value(a) != TruthValue::False) work.push_back(a);
  }
  while (!work.empty()) {
    Atom a = work.back();
    work.pop_back();
    if (sourced_[a] || value(a) == TruthValue::False || !trySource(a)) continue;
    for (Atom h : occ_[Literal::positive(a).index()]) {
      if (!sourced_[h] && value(h) != TruthValue::False) work.push_back(h);
    }
  }

  std::vector<Atom> unfounded;
  for (Atom a : candidates_) {
    if (!sourced_[a] && value(a) != TruthValue::False) unfounded.push_back(a);
  }
  if (unfounded.empty()) {
    for (Atom a : candidates_) isCandidate_[a] = false;
    candidates_.clear();
    return true;
  }
  ++stats_.unfoundedSets;

  // External bodies of the set, all false.
  for (Atom u : unfounded) seen_[u] = true;
  Clause external;
  for (Atom u : unfounded) {
    const Rule& r = *ruleOf_[u];
    if (r.isConjunctive()) {
      bool internal = false;
      for (Literal l : r.body) {
        if (l.isPositive() && seen_[l.atom()]) internal = true;
      }
      if (internal) continue;
      for (Literal l : r.body) {
        if (value(l) == TruthValue::False) {
          external.push_back(l);
          break;
        }
      }
    } else {
      for (Literal l : r.body) {
        if (!(l.isPositive() && seen_[l.atom()])) external.push_back(l);
      }
    }
  }
  for (Atom u : unfounded) seen_[u] = false;
  std::sort(external.begin(), external.end());
  external.erase(std::unique(external.begin(), external.end()), external.end());

  for (Atom u : unfounded) {
    if (value(u) == TruthValue::True) {
      conflict_.clear();
      conflict_.push_back(Literal::negative(u));
      conflict_.insert(conflict_.end(), external.begin(), external.end());
      return false;
    }
  }
  for (Atom u : unfounded) {
    Clause& reason = loopReason_[u];
    reason.clear();
    reason.push_back(Literal::negative(u));
    reason.insert(reason.end(), external.begin(), external.end());
    enqueue(Literal::negative(u), ReasonKind::Loop, kNoClause);
  }
  for (Atom a : candidates_) isCandidate_[a] = false;
  candidates_.clear();
  // Remaining unsourced atoms are false now; backtracking re-queues them.
  return true;
}

bool Solver::propagate() {
  while (true) {
    if (!propagateUnit()) return false;
    std::size_t before = trail_.size();
    if (!propagateUnfounded()) return false;
    if (trail_.size() == before) return true;
  }
}

// ---------------------------------------------------------------------------
// Conflict analysis
// ---------------------------------------------------------------------------

std::pair<Clause, std::size_t> Solver::analyzeConflict() {
  std::size_t maxLevel = 0;
  for (Literal q : conflict_) maxLevel = std::max(maxLevel, level_[q.atom()]);
  if (maxLevel == 0) return {{}, 0};
  backtrackTo(maxLevel);

  Clause learnt{Literal()};
  std::size_t pathCount = 0;
  Literal p;
  std::size_t idx = trail_.size();
  Clause reason = conflict_;
  std::vector<Atom> touched;
  while (true) {
    for (Literal q : reason) {
      if (p.valid() && q == p) continue;
      Atom a = q.atom();
      if (seen_[a] || level_[a] == 0) continue;
      seen_[a] = true;
      touched.push_back(a);
      bump(a);
      if (level_[a] == decisionLevel()) ++pathCount;
      else learnt.push_back(q);
    }
    do {
      --idx;
    } while (!seen_[trail_[idx].atom()]);
    p = trail_[idx];
    seen_[p.atom()] = false;
    if (--pathCount == 0) break;
    reason = reasonOf(p.atom());
  }
  learnt[0] = ~p;
  for (Atom a : touched) seen_[a] = false;

  std::size_t backjump = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (level_[learnt[i].atom()] > level_[learnt[best].atom()]) best = i;
    }
    std::swap(learnt[1], learnt[best]);
    backjump = level_[learnt[1].atom()];
  }
  return {learnt, backjump};
}

void Solver::checkLearned(const Clause& c) const {
  for (Literal l : c) {
    if (maps_.isJustAtom(l.atom())) throw std::logic_error("learned clause mentions a justification atom");
  }
}

// ---------------------------------------------------------------------------
// Decisions
// ---------------------------------------------------------------------------

std::optional<Literal> Solver::decide() {
  std::vector<Atom> skipped;
  std::optional<Literal> chosen;
  while (!heap_.empty()) {
    Atom a = heapPop();
    if (value(a) != TruthValue::Unknown) continue;
    if (!tracker_) {
      chosen = phase_[a] ? Literal::positive(a) : Literal::negative(a);
      break;
    }
    stats_.relevanceQueries += 2;
    bool pos = tracker_->isRelevant(Literal::positive(a));
    bool neg = tracker_->isRelevant(Literal::negative(a));
    if (!pos && !neg) {
      skipped.push_back(a);
      continue;
    }
    if (pos && neg) chosen = phase_[a] ? Literal::positive(a) : Literal::negative(a);
    else chosen = pos ? Literal::positive(a) : Literal::negative(a);
    break;
  }
  for (Atom a : skipped) heapInsert(a);
  return chosen;
}

bool Solver::onEmptyRelevant() {
  if (cfg_.emptyRelevantPolicy == EmptyRelevantPolicy::Fallback) {
    for (Atom a = 1; a <= numAtoms_; ++a) {
      if (value(a) == TruthValue::Unknown && !maps_.isJustAtom(a)) {
        Literal l = phase_[a] ? Literal::positive(a) : Literal::negative(a);
        ++stats_.decisions;
        if (onDecision) onDecision(l, DecisionSource::Fallback, *this);
        newDecision(l, false);
        return true;
      }
    }
    return true;
  }
  // Chronological flip of the latest decision that was not flipped yet.
  std::size_t level = decisionLevel();
  while (level > 0 && flipped_[level - 1]) --level;
  if (level == 0) return false;
  Literal decision = trail_[trailLim_[level - 1]];
  backtrackTo(level - 1);
  ++stats_.decisions;
  if (onDecision) onDecision(~decision, DecisionSource::Flip, *this);
  newDecision(~decision, true);
  return true;
}

std::size_t Solver::freeOpens() const {
  std::size_t n = 0;
  for (Atom a = 1; a <= maps_.numOriginalAtoms; ++a) {
    if (maps_.isOriginalOpen(a) && value(a) == TruthValue::Unknown) ++n;
  }
  return n;
}

std::uint64_t Solver::reportJustifiedCount() const {
  if (!theoryJustified()) throw Error("theory atom is not justified");
  std::size_t n = freeOpens();
  if (n >= 64) throw Error("model count does not fit in 64 bits");
  return std::uint64_t{1} << n;
}

bool Solver::theoryJustified() const {
  return justRoot_.valid() && value(justRoot_) == TruthValue::True;
}

PartialInterpretation Solver::witness() const {
  PartialInterpretation out(maps_.numOriginalAtoms);
  for (Atom a = 1; a <= maps_.numOriginalAtoms; ++a) out.set(a, values_[a]);
  return out;
}

PartialInterpretation Solver::assignment() const {
  PartialInterpretation out(numAtoms_);
  for (Atom a = 1; a <= numAtoms_; ++a) out.set(a, values_[a]);
  return out;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

bool Solver::budgetExhausted() const {
  if (cfg_.maxConflicts && stats_.conflicts >= *cfg_.maxConflicts) return true;
  if (cfg_.timeLimitSeconds) {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    if (elapsed.count() >= *cfg_.timeLimitSeconds) return true;
  }
  return false;
}

SolveResult Solver::finish(SolveStatus status) {
  SolveResult r;
  r.status = status;
  r.stats = stats_;
  if (status == SolveStatus::Sat) {
    r.witness = witness();
    r.freeOpens = freeOpens();
    if (*r.freeOpens < 64) r.modelsRepresented = std::uint64_t{1} << *r.freeOpens;
  }
  return r;
}

SolveResult Solver::solve() {
  start_ = std::chrono::steady_clock::now();
  if (unsat_) return finish(SolveStatus::Unsat);
  std::uint64_t restartIndex = 0;
  std::uint64_t conflictsUntilRestart = luby(restartIndex) * kRestartBase;

  while (true) {
    if (!propagate()) {
      ++stats_.conflicts;
      auto [learnt, backjump] = analyzeConflict();
      if (learnt.empty()) return finish(SolveStatus::Unsat);
      if (cfg_.checkInvariants) checkLearned(learnt);
      if (onLearned) onLearned(learnt);
      backtrackTo(backjump);
      Literal asserting = learnt[0];
      addClause(std::move(learnt), true);
      enqueue(asserting, ReasonKind::Clause, static_cast<std::uint32_t>(clauses_.size() - 1));
      decayActivities();
      if (budgetExhausted()) return finish(SolveStatus::Unknown);
      if (--conflictsUntilRestart == 0) {
        ++stats_.restarts;
        conflictsUntilRestart = luby(++restartIndex) * kRestartBase;
        backtrackTo(0);
      }
      continue;
    }

    if (cfg_.stopOnJustified && theoryJustified()) {
      stats_.stoppedEarly = true;
      return finish(SolveStatus::Sat);
    }
    if (cfg_.checkInvariants && tracker_) {
      if (auto err = tracker_->checkInvariants()) throw std::logic_error("relevance invariant: " + *err);
    }
    if ((stats_.decisions & 1023) == 0 && budgetExhausted()) return finish(SolveStatus::Unknown);

    if (auto l = decide()) {
      ++stats_.decisions;
      if (onDecision) onDecision(*l, DecisionSource::Heuristic, *this);
      newDecision(*l, false);
      continue;
    }

    bool complete = true;
    for (Atom a = 1; a <= numAtoms_ && complete; ++a) {
      if (value(a) == TruthValue::Unknown && !maps_.isJustAtom(a)) complete = false;
    }
    if (complete) return finish(SolveStatus::Sat);

    if (theoryJustified()) {
      // Only reachable with early stopping off: nothing is relevant any more.
      EmptyRelevantPolicy saved = cfg_.emptyRelevantPolicy;
      cfg_.emptyRelevantPolicy = EmptyRelevantPolicy::Fallback;
      onEmptyRelevant();
      cfg_.emptyRelevantPolicy = saved;
      continue;
    }
    if (!onEmptyRelevant()) return finish(SolveStatus::Unsat);
  }
}

// ---------------------------------------------------------------------------
// VSIDS heap
// ---------------------------------------------------------------------------

void Solver::bump(Atom a) {
  activity_[a] += activityInc_;
  if (activity_[a] > 1e100) {
    for (double& x : activity_) x *= 1e-100;
    activityInc_ *= 1e-100;
  }
  if (inHeap(a)) heapUp(static_cast<std::size_t>(heapPos_[a]));
}

void Solver::decayActivities() { activityInc_ /= kActivityDecay; }

bool Solver::heapLess(Atom a, Atom b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void Solver::heapInsert(Atom a) {
  heapPos_[a] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(a);
  heapUp(heap_.size() - 1);
}

Atom Solver::heapPop() {
  Atom top = heap_.front();
  heapPos_[top] = -1;
  Atom last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heapPos_[last] = 0;
    heapDown(0);
  }
  return top;
}

void Solver::heapUp(std::size_t i) {
  Atom x = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heapLess(x, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heapPos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = parent;
  }
  heap_[i] = x;
  heapPos_[x] = static_cast<std::int64_t>(i);
}

void Solver::heapDown(std::size_t i) {
  Atom x = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heapLess(heap_[child + 1], heap_[child])) ++child;
    if (!heapLess(heap_[child], x)) break;
    heap_[i] = heap_[child];
    heapPos_[heap_[i]] = static_cast<std::int64_t>(i);
    i = child;
  }
  heap_[i] = x;
  heapPos_[x] = static_cast<std::int64_t>(i);
}

SolveResult solve(const DefnfTheory& theory, const SolverConfig& cfg) {
  Solver s(theory, cfg);
  return s.solve();
}

}  // namespace pcid
