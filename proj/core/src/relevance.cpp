#include "pcid/relevance.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcid/error.hpp"

namespace pcid {

namespace {
// Longest watch chain the quick re-watch will follow before handing the
// literal to the region recomputation.
constexpr std::size_t kMaxChainWalk = 256;
}  // namespace

RelevanceTracker::RelevanceTracker(const JustificationMaps& maps, Atom theoryAtom)
    : maps_(&maps),
      numAtoms_(maps.numOriginalAtoms),
      root_(Literal::positive(theoryAtom)),
      values_(maps.numAtoms + 1, TruthValue::Unknown) {}

RelevanceTracker RelevanceTracker::forTheory(const DefnfTheory& theory, const JustificationMaps& maps) {
  RelevanceTracker t(maps, theory.theoryAtom);
  for (const Rule& r : theory.definition.rules()) t.notifyNewRule(r);
  t.seal();
  return t;
}

void RelevanceTracker::notifyNewRule(const Rule& rule) {
  if (sealed_) throw std::logic_error("notifyNewRule after initialization was sealed");
  pendingRules_.add(rule);
}

void RelevanceTracker::seal() {
  if (sealed_) throw std::logic_error("tracker already sealed");
  numAtoms_ = std::max<std::size_t>({numAtoms_, pendingRules_.maxAtom(), root_.atom()});
  graph_ = DependencyGraph(pendingRules_, numAtoms_);
  pendingRules_ = Definition();
  std::size_t lits = 2 * (numAtoms_ + 1);
  watch_.assign(lits, Literal());
  justified_.assign(lits, 0);
  mark_.assign(lits, 0);
  sealed_ = true;
  notifyBecomesRelevant(root_);
}

void RelevanceTracker::requireSealed() const {
  if (!sealed_) throw std::logic_error("relevance tracker used before seal()");
}

// ---------------------------------------------------------------------------
// Solver interface
// ---------------------------------------------------------------------------

void RelevanceTracker::notifyBecomesTrue(Literal l) {
  requireSealed();
  Atom a = l.atom();
  if (a == 0 || a >= values_.size()) throw Error("literal " + toString(l) + " outside the tracked atoms");
  if (values_[a] != TruthValue::Unknown) throw Error("atom " + std::to_string(a) + " is already assigned");
  values_[a] = l.isPositive() ? TruthValue::True : TruthValue::False;
  if (auto ev = onAssign(l, false, *maps_)) notifyBecomesJustified(ev->literal);
}

void RelevanceTracker::notifyBecomesUnknown(Literal l) {
  requireSealed();
  Atom a = l.atom();
  if (a == 0 || a >= values_.size()) throw Error("literal " + toString(l) + " outside the tracked atoms");
  if (values_[a] == TruthValue::Unknown) throw Error("atom " + std::to_string(a) + " is already unknown");
  Literal wasTrue = values_[a] == TruthValue::True ? Literal::positive(a) : Literal::negative(a);
  values_[a] = TruthValue::Unknown;
  if (auto ev = onAssign(wasTrue, true, *maps_)) notifyBecomesUnjustified(ev->literal);
}

bool RelevanceTracker::isRelevant(Literal l) const {
  return sealed_ && inRange(l) && relevant(l);
}

std::optional<Literal> RelevanceTracker::watchedParent(Literal l) const {
  if (!inRange(l) || !watch_[l.index()].valid()) return std::nullopt;
  return watch_[l.index()];
}

// ---------------------------------------------------------------------------
// Justification changes
// ---------------------------------------------------------------------------

void RelevanceTracker::notifyBecomesJustified(Literal l) {
  requireSealed();
  if (!inRange(l)) return;
  if (justified_[l.index()]) throw std::logic_error("literal " + toString(l) + " justified twice");
  ++stats_.justifiedEvents;
  bool wasRelevant = relevant(l);
  justified_[l.index()] = 1;
  // Removing all candidate parents: a justified literal is never relevant,
  // so no replacement watch is searched for.
  watch_[l.index()] = Literal();
  if (wasRelevant) notifyBecomesIrrelevant(l);
}

void RelevanceTracker::notifyBecomesUnjustified(Literal l) {
  requireSealed();
  if (!inRange(l)) return;
  if (!justified_[l.index()]) throw std::logic_error("literal " + toString(l) + " is not justified");
  ++stats_.unjustifiedEvents;
  justified_[l.index()] = 0;
  if (l == root_) {
    notifyBecomesRelevant(l);
    return;
  }
  for (Literal p : graph_.parents(l)) {
    if (relevant(p)) {
      notifyAddCandidateParent(l, p);
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Cascades
// ---------------------------------------------------------------------------

void RelevanceTracker::notifyBecomesRelevant(Literal l) {
  additions_.push_back(l);
  drainAdditions();
}

void RelevanceTracker::drainAdditions() {
  if (draining_) return;
  draining_ = true;
  while (!additions_.empty()) {
    Literal x = additions_.front();
    additions_.pop_front();
    for (Literal c : graph_.children(x)) notifyAddCandidateParent(c, x);
  }
  draining_ = false;
}

void RelevanceTracker::notifyAddCandidateParent(Literal l, Literal parent) {
  if (!inRange(l) || !inRange(parent)) return;
  if (relevant(l) || justified_[l.index()] || !relevant(parent) || !graph_.hasEdge(parent, l)) return;
  watch_[l.index()] = parent;
  ++stats_.watchAssignments;
  notifyBecomesRelevant(l);
}

void RelevanceTracker::notifyBecomesIrrelevant(Literal l) {
  if (!inRange(l)) return;
  detachChildren(l);
}

void RelevanceTracker::notifyRemoveCandidateParent(Literal l, Literal parent) {
  if (!inRange(l) || watch_[l.index()] != parent || !parent.valid()) return;
  watch_[l.index()] = Literal();
  if (auto n = findNonCyclicWatch(l, parent)) {
    watch_[l.index()] = *n;
    ++stats_.fastRewatches;
    return;
  }
  recomputeRegion({{l, parent}});
}

std::optional<Literal> RelevanceTracker::findNonCyclicWatch(Literal l, Literal excluded) const {
  if (!inRange(l) || justified_[l.index()]) return std::nullopt;
  for (Literal n : graph_.parents(l)) {
    if (n == excluded || n == l || !relevant(n)) continue;
    if (chainReachesRoot(n, l)) return n;
  }
  return std::nullopt;
}

bool RelevanceTracker::chainReachesRoot(Literal from, Literal avoid) const {
  Literal x = from;
  for (std::size_t steps = 0; steps <= kMaxChainWalk; ++steps) {
    if (x == avoid) return false;
    if (x == root_) return !justified_[x.index()];
    Literal w = watch_[x.index()];
    if (!w.valid()) return false;
    x = w;
  }
  return false;
}

// All children watching `parent` lose that watch at once; each first tries a
// quick re-watch, and the rest are re-sourced together as one region so that
// no literal can latch onto a subtree that is itself about to die.
void RelevanceTracker::detachChildren(Literal parent) {
  std::vector<Literal> orphans;
  for (Literal c : graph_.children(parent)) {
    if (watch_[c.index()] == parent) {
      watch_[c.index()] = Literal();
      orphans.push_back(c);
    }
  }
  std::vector<std::pair<Literal, Literal>> failed;
  for (Literal c : orphans) {
    if (auto n = findNonCyclicWatch(c, parent)) {
      watch_[c.index()] = *n;
      ++stats_.fastRewatches;
    } else {
      failed.emplace_back(c, parent);
    }
  }
  if (!failed.empty()) recomputeRegion(failed);
}

// Founded-set recomputation. The region is every literal whose watch chain
// runs through one of the roots; it is cleared and then re-sourced from
// relevant literals outside it, growing inward. Whatever stays unsourced is
// irrelevant, and all literals watching those are inside the region too.
void RelevanceTracker::recomputeRegion(const std::vector<std::pair<Literal, Literal>>& roots) {
  ++stats_.regionRecomputations;
  std::vector<Literal> region;
  for (auto [r, excluded] : roots) {
    (void)excluded;
    if (!mark_[r.index()]) {
      mark_[r.index()] = 1;
      region.push_back(r);
    }
  }
  for (std::size_t i = 0; i < region.size(); ++i) {
    Literal x = region[i];
    for (Literal c : graph_.children(x)) {
      if (!mark_[c.index()] && watch_[c.index()] == x) {
        mark_[c.index()] = 1;
        region.push_back(c);
      }
    }
  }
  for (Literal x : region) watch_[x.index()] = Literal();
  stats_.regionLiterals += region.size();

  auto excludedFor = [&](Literal x) {
    for (auto [r, e] : roots) {
      if (r == x) return e;
    }
    return Literal();
  };

  std::vector<Literal> work(region.rbegin(), region.rend());
  while (!work.empty()) {
    Literal x = work.back();
    work.pop_back();
    if (watch_[x.index()].valid() || justified_[x.index()]) continue;
    Literal excluded = excludedFor(x);
    for (Literal p : graph_.parents(x)) {
      if (p == excluded || p == x || !relevant(p)) continue;
      watch_[x.index()] = p;
      ++stats_.watchAssignments;
      for (Literal c : graph_.children(x)) {
        if (mark_[c.index()] && !watch_[c.index()].valid()) work.push_back(c);
      }
      break;
    }
  }
  for (Literal x : region) mark_[x.index()] = 0;
}

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

std::vector<Literal> RelevanceTracker::relevantLiterals() const {
  std::vector<Literal> out;
  if (!sealed_) return out;
  for (std::size_t i = 2; i < watch_.size(); ++i) {
    Literal l = Literal::fromIndex(i);
    if (relevant(l)) out.push_back(l);
  }
  return out;
}

std::size_t RelevanceTracker::numRelevant() const { return relevantLiterals().size(); }

std::optional<std::string> RelevanceTracker::checkInvariants() const {
  if (!sealed_) return "tracker not sealed";
  if (watch_[root_.index()].valid()) return "theory atom has a watched parent";
  for (std::size_t i = 2; i < watch_.size(); ++i) {
    Literal l = Literal::fromIndex(i);
    Literal w = watch_[i];
    if (!w.valid()) continue;
    if (justified_[i]) return "justified literal " + toString(l) + " has a watch";
    if (!relevant(w)) return "watch of " + toString(l) + " is irrelevant";
    if (!graph_.hasEdge(w, l)) return "watch of " + toString(l) + " is not a dependency parent";
    // The chain must reach the root within one step per literal.
    Literal x = l;
    std::size_t steps = 0;
    while (x != root_) {
      if (++steps > watch_.size()) return "watch cycle through " + toString(l);
      x = watch_[x.index()];
      if (!x.valid()) return "watch chain of " + toString(l) + " ends before the theory atom";
    }
  }
  // Exactness against the fixpoint over the current justified flags.
  std::vector<std::uint8_t> expect(watch_.size(), 0);
  if (!justified_[root_.index()]) {
    std::vector<Literal> stack{root_};
    expect[root_.index()] = 1;
    while (!stack.empty()) {
      Literal x = stack.back();
      stack.pop_back();
      for (Literal c : graph_.children(x)) {
        if (!expect[c.index()] && !justified_[c.index()]) {
          expect[c.index()] = 1;
          stack.push_back(c);
        }
      }
    }
  }
  for (std::size_t i = 2; i < watch_.size(); ++i) {
    Literal l = Literal::fromIndex(i);
    if (static_cast<bool>(expect[i]) != relevant(l)) {
      return "relevance of " + toString(l) + " differs from its fixpoint";
    }
  }
  return std::nullopt;
}

RelevanceSnapshot RelevanceTracker::snapshot() const {
  RelevanceSnapshot s;
  s.graph = &graph_;
  s.root = root_;
  s.relevant.assign(watch_.size(), false);
  s.justified.assign(watch_.size(), false);
  for (std::size_t i = 2; i < watch_.size(); ++i) {
    s.relevant[i] = relevant(Literal::fromIndex(i));
    s.justified[i] = justified_[i] != 0;
  }
  return s;
}

}  // namespace pcid
