#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcid/io.hpp"
#include "pcid/justifier.hpp"
#include "pcid/relevance.hpp"

namespace pcid {

struct ReplayOptions {
  /// Compare the relevant set with the brute-force reference after every
  /// assignment event.
  bool checkOracle = false;
  bool checkInvariants = false;
};

struct ReplayReport {
  std::size_t events = 0;
  std::vector<std::string> output;    // answers to `?` lines
  std::vector<std::string> failures;  // failed expectations and checks

  bool ok() const { return failures.empty(); }
};

/// Drives a relevance tracker from a trace. Literals range over the original
/// atoms followed by the justification atoms.
class Replayer {
 public:
  explicit Replayer(DefnfTheory theory);

  /// Throws Error on an event that does not fit the current assignment.
  void apply(const TraceEvent& event, ReplayReport& report, const ReplayOptions& opts = {});
  ReplayReport run(std::span<const TraceEvent> events, const ReplayOptions& opts = {});

  /// Description of the first difference from the reference relevant set.
  /// While the justification atoms lag behind (see synchronized()), the
  /// reference is the fixpoint over the justified flags seen so far.
  std::optional<std::string> oracleMismatch() const;
  /// True when every justification atom agrees with the reference
  /// justified status of its atom.
  bool synchronized() const;

  const DefnfTheory& theory() const { return theory_; }
  const JustificationMaps& maps() const { return *maps_; }
  const RelevanceTracker& tracker() const { return *tracker_; }
  /// Current assignment over original and justification atoms.
  const PartialInterpretation& interpretation() const { return interp_; }

 private:
  PartialInterpretation originalPart() const;

  DefnfTheory theory_;
  std::unique_ptr<JustificationMaps> maps_;
  std::unique_ptr<RelevanceTracker> tracker_;
  PartialInterpretation interp_;
};

}  // namespace pcid
