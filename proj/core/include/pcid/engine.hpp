#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "pcid/justifier.hpp"
#include "pcid/relevance.hpp"
#include "pcid/theory.hpp"

namespace pcid {

enum class EmptyRelevantPolicy { Backtrack, Fallback };

struct SolverConfig {
  bool relevanceFilter = true;
  bool stopOnJustified = true;
  EmptyRelevantPolicy emptyRelevantPolicy = EmptyRelevantPolicy::Backtrack;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> maxConflicts;
  std::optional<double> timeLimitSeconds;
  /// Expensive self-checks at every decision and learned clause.
  bool checkInvariants = false;
};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t unfoundedSets = 0;
  std::uint64_t restarts = 0;
  std::uint64_t relevanceQueries = 0;
  bool stoppedEarly = false;
};

enum class SolveStatus { Sat, Unsat, Unknown };

/// Where a decision came from: the (filtered) heuristic, an external
/// assume(), the fallback policy, or a chronological flip.
enum class DecisionSource { Heuristic, Assumption, Fallback, Flip };

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  /// Assignment over the original atoms; unassigned atoms are u.
  PartialInterpretation witness;
  SolveStats stats;
  /// Open atoms left unassigned by a SAT answer (0 for a full model).
  std::optional<std::size_t> freeOpens;
  /// 2^freeOpens when that fits in 64 bits.
  std::optional<std::uint64_t> modelsRepresented;
};

/// CDCL over the completion of the definition and its justification copy,
/// with unfounded-set propagation over both and relevance-filtered decisions.
class Solver {
 public:
  /// With assertTheoryAtom false the theory atom is not forced true, which
  /// leaves pure propagation over the definition.
  Solver(const DefnfTheory& theory, SolverConfig cfg = {}, bool assertTheoryAtom = true);
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  SolveResult solve();

  // Step-level interface.
  /// Opens a new decision level with l true. False if l is already false.
  bool assume(Literal l);
  /// Unit and unfounded-set propagation to fixpoint. False on conflict.
  bool propagate();
  /// Two-watched-literal propagation. False on conflict.
  bool propagateUnit();
  /// One round of unfounded-set detection; assigns the set false.
  /// False on conflict.
  bool propagateUnfounded();
  /// Next decision literal, or nothing when none is eligible.
  std::optional<Literal> decide();
  /// First-UIP clause for the current conflict and its backjump level.
  std::pair<Clause, std::size_t> analyzeConflict();
  /// Applies the configured empty-relevance policy. False means UNSAT.
  bool onEmptyRelevant();
  /// 2^n for the n unassigned open atoms; requires j(p_T) true.
  std::uint64_t reportJustifiedCount() const;
  /// Number of unassigned open atoms.
  std::size_t freeOpens() const;
  void backtrackTo(std::size_t level);

  TruthValue value(Atom a) const { return a < values_.size() ? values_[a] : TruthValue::Unknown; }
  TruthValue value(Literal l) const {
    TruthValue v = value(l.atom());
    return l.isPositive() ? v : complement(v);
  }
  std::size_t decisionLevel() const { return trailLim_.size(); }
  std::size_t levelOf(Atom a) const { return level_[a]; }
  bool isDecision(Atom a) const;
  const std::vector<Literal>& trail() const { return trail_; }
  const Clause& conflictClause() const { return conflict_; }
  std::size_t numLearned() const { return clauses_.size() - numOriginalClauses_; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  /// Original atoms only.
  PartialInterpretation witness() const;
  /// Original and justification atoms.
  PartialInterpretation assignment() const;
  bool theoryJustified() const;

  const DefnfTheory& theory() const { return theory_; }
  const JustificationMaps& maps() const { return maps_; }
  const RelevanceTracker* tracker() const { return tracker_.get(); }
  const SolveStats& stats() const { return stats_; }
  const SolverConfig& config() const { return cfg_; }

  /// Called before each decision is applied.
  std::function<void(Literal, DecisionSource, const Solver&)> onDecision;
  /// Called for each learned clause.
  std::function<void(const Clause&)> onLearned;

 private:
  enum class ReasonKind : std::uint8_t { None, Clause, Loop };

  void addClause(Clause c, bool learned);
  void enqueue(Literal l, ReasonKind kind, std::uint32_t clause);
  const Clause& reasonOf(Atom a) const;
  void newDecision(Literal l, bool flipped);
  void checkLearned(const Clause& c) const;
  bool budgetExhausted() const;
  SolveResult finish(SolveStatus status);

  // Unfounded sets.
  bool validSupport(Literal l) const;
  void unsource(Atom a);
  void pushCandidate(Atom a);
  bool trySource(Atom a);

  // VSIDS.
  void bump(Atom a);
  void decayActivities();
  bool heapLess(Atom a, Atom b) const;
  void heapInsert(Atom a);
  Atom heapPop();
  void heapUp(std::size_t i);
  void heapDown(std::size_t i);
  bool inHeap(Atom a) const { return heapPos_[a] >= 0; }

  DefnfTheory theory_;
  SolverConfig cfg_;
  JustificationMaps maps_;
  Definition combined_;  // original rules and their justification copies
  std::unique_ptr<RelevanceTracker> tracker_;
  std::size_t numAtoms_;
  Literal justRoot_;
  bool unsat_ = false;

  std::vector<Clause> clauses_;
  std::size_t numOriginalClauses_ = 0;
  std::vector<std::vector<std::uint32_t>> watches_;  // by literal index

  std::vector<TruthValue> values_;
  std::vector<std::size_t> level_;
  std::vector<ReasonKind> reasonKind_;
  std::vector<std::uint32_t> reasonClause_;
  std::vector<Clause> loopReason_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> trailLim_;
  std::vector<bool> flipped_;  // per decision level
  std::size_t qhead_ = 0;
  std::size_t ufHead_ = 0;
  Clause conflict_;

  // Source pointers.
  std::vector<const Rule*> ruleOf_;
  std::vector<std::vector<Atom>> occ_;  // literal index -> heads using it
  std::vector<bool> sourced_;
  std::vector<Literal> sourceLit_;
  std::vector<Atom> candidates_;
  std::vector<bool> isCandidate_;

  std::vector<double> activity_;
  double activityInc_ = 1.0;
  std::vector<Atom> heap_;
  std::vector<std::int64_t> heapPos_;
  std::vector<bool> phase_;  // saved polarity, true = positive
  std::vector<bool> seen_;

  SolveStats stats_;
  std::chrono::steady_clock::time_point start_;
};

/// Convenience wrapper around Solver::solve.
SolveResult solve(const DefnfTheory& theory, const SolverConfig& cfg = {});

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, ... at 0-based index i.
std::uint64_t luby(std::uint64_t i);

}  // namespace pcid
