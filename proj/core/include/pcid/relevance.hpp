#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "pcid/dependency_graph.hpp"
#include "pcid/dot.hpp"
#include "pcid/justifier.hpp"

namespace pcid {

/// Incremental relevance tracker.
///
/// A literal is relevant when it is unjustified and reachable from an
/// unjustified theory atom through unjustified literals of the dependency
/// graph. Instead of the full set of relevant parents, each relevant literal
/// keeps one watched parent; the watches form a forest rooted at the theory
/// atom, which is relevant by a flag rather than a watch.
///
/// Invariants at quiescence (after every public notify* call returns):
///  - relevant(l) iff l is the unjustified theory atom or l has a watch;
///  - a watch l -> w has w relevant, l unjustified and (w, l) a dependency edge;
///  - following watches from any literal ends at the theory atom;
///  - irrelevant literals are watched by nobody.
///
/// Losing relevance is handled like unfounded-set detection with source
/// pointers: a literal whose watch dies first tries a parent whose watch
/// chain is intact and avoids it; failing that, its whole watch subtree is
/// cut loose and re-sourced from outside, and whatever cannot be re-sourced
/// becomes irrelevant together.
class RelevanceTracker {
 public:
  struct Stats {
    std::uint64_t justifiedEvents = 0;
    std::uint64_t unjustifiedEvents = 0;
    std::uint64_t watchAssignments = 0;
    std::uint64_t fastRewatches = 0;
    std::uint64_t regionRecomputations = 0;
    std::uint64_t regionLiterals = 0;
  };

  /// maps must outlive the tracker. Rules are fed through notifyNewRule
  /// followed by seal().
  RelevanceTracker(const JustificationMaps& maps, Atom theoryAtom);

  /// Tracker wired to every rule of the theory and sealed.
  static RelevanceTracker forTheory(const DefnfTheory& theory, const JustificationMaps& maps);

  /// Adds the rule's dependency edges. Only legal before seal().
  void notifyNewRule(const Rule& rule);
  /// Ends initialization: the theory atom becomes relevant and initial
  /// watches are laid breadth-first from it.
  void seal();
  bool sealed() const { return sealed_; }

  // Solver interface. Literals range over original and justification atoms.
  void notifyBecomesTrue(Literal l);
  void notifyBecomesUnknown(Literal l);
  bool isRelevant(Literal l) const;

  // Justification changes on original literals.
  void notifyBecomesJustified(Literal l);
  void notifyBecomesUnjustified(Literal l);

  // Cascade steps; public so they can be driven and inspected directly.
  void notifyBecomesRelevant(Literal l);
  void notifyBecomesIrrelevant(Literal l);
  void notifyAddCandidateParent(Literal l, Literal parent);
  void notifyRemoveCandidateParent(Literal l, Literal parent);
  /// A relevant parent of l other than `excluded` whose watch chain reaches
  /// the theory atom without passing through l.
  std::optional<Literal> findNonCyclicWatch(Literal l, Literal excluded) const;

  bool isJustified(Literal l) const { return inRange(l) && justified_[l.index()]; }
  std::optional<Literal> watchedParent(Literal l) const;
  TruthValue value(Atom a) const { return a < values_.size() ? values_[a] : TruthValue::Unknown; }

  /// Relevant literals ordered by Literal::index().
  std::vector<Literal> relevantLiterals() const;
  std::size_t numRelevant() const;

  /// Full scan of the invariants above, including exactness of the relevant
  /// set against its fixpoint definition. Empty when everything holds.
  std::optional<std::string> checkInvariants() const;

  RelevanceSnapshot snapshot() const;
  const DependencyGraph& graph() const { return graph_; }
  Literal root() const { return root_; }
  const Stats& stats() const { return stats_; }

 private:
  bool inRange(Literal l) const { return l.valid() && l.index() < justified_.size(); }
  bool relevant(Literal l) const {
    return l == root_ ? !justified_[l.index()] : watch_[l.index()].valid();
  }
  bool chainReachesRoot(Literal from, Literal avoid) const;
  void drainAdditions();
  void detachChildren(Literal parent);
  void recomputeRegion(const std::vector<std::pair<Literal, Literal>>& roots);
  void requireSealed() const;

  const JustificationMaps* maps_;
  std::size_t numAtoms_;
  Literal root_;
  bool sealed_ = false;
  Definition pendingRules_;
  DependencyGraph graph_;

  std::vector<TruthValue> values_;   // original and justification atoms
  std::vector<Literal> watch_;       // by literal index; invalid = none
  std::vector<std::uint8_t> justified_;
  std::vector<std::uint8_t> mark_;   // scratch for region recomputation
  std::deque<Literal> additions_;    // literals that just became relevant
  bool draining_ = false;
  Stats stats_;
};

}  // namespace pcid
