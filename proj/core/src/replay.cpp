#include "pcid/replay.hpp"

#include "pcid/error.hpp"
#include "pcid/oracle.hpp"

namespace pcid {

namespace {
std::string at(const TraceEvent& e) { return e.line ? "line " + std::to_string(e.line) + ": " : std::string(); }
}  // namespace

Replayer::Replayer(DefnfTheory theory) : theory_(std::move(theory)) {
  theory_.validate();
  maps_ = std::make_unique<JustificationMaps>(buildJustificationDefinition(theory_.definition, theory_.numAtoms));
  tracker_ = std::make_unique<RelevanceTracker>(RelevanceTracker::forTheory(theory_, *maps_));
  interp_ = PartialInterpretation(maps_->numAtoms);
}

void Replayer::apply(const TraceEvent& e, ReplayReport& report, const ReplayOptions& opts) {
  Atom a = e.literal.atom();
  if (a == 0 || a > maps_->numAtoms) {
    throw Error(at(e) + "literal " + toString(e.literal) + " is outside the atoms 1.." + std::to_string(maps_->numAtoms));
  }
  ++report.events;
  switch (e.kind) {
    case TraceEvent::Kind::BecomesTrue:
      if (!interp_.isUnknown(a)) throw Error(at(e) + "atom " + std::to_string(a) + " is already assigned");
      interp_.makeTrue(e.literal);
      tracker_->notifyBecomesTrue(e.literal);
      break;
    case TraceEvent::Kind::BecomesUnknown: {
      if (interp_.isUnknown(a)) throw Error(at(e) + "atom " + std::to_string(a) + " is not assigned");
      Literal wasTrue = interp_.isTrue(Literal::positive(a)) ? Literal::positive(a) : Literal::negative(a);
      interp_.set(a, TruthValue::Unknown);
      tracker_->notifyBecomesUnknown(wasTrue);
      break;
    }
    case TraceEvent::Kind::QueryRelevant:
      report.output.push_back(toString(e.literal) + (tracker_->isRelevant(e.literal) ? " 1" : " 0"));
      return;
    case TraceEvent::Kind::ExpectRelevant: {
      bool got = tracker_->isRelevant(e.literal);
      if (e.expected && got != *e.expected) {
        report.failures.push_back(at(e) + "expected relevance of " + toString(e.literal) + " to be " +
                                  (*e.expected ? "1" : "0") + ", got " + (got ? "1" : "0"));
      }
      return;
    }
  }
  if (opts.checkInvariants) {
    if (auto err = tracker_->checkInvariants()) report.failures.push_back(at(e) + *err);
  }
  if (opts.checkOracle) {
    if (auto err = oracleMismatch()) report.failures.push_back(at(e) + *err);
  }
}

ReplayReport Replayer::run(std::span<const TraceEvent> events, const ReplayOptions& opts) {
  ReplayReport report;
  for (const TraceEvent& e : events) apply(e, report, opts);
  return report;
}

bool Replayer::synchronized() const {
  PartialInterpretation original = originalPart();
  for (Atom a = 1; a <= theory_.numAtoms; ++a) {
    JustificationStatus mine = justificationStatusFromState(Literal::positive(a), *maps_, interp_);
    oracle::JustifiedStatus ref = oracle::justifiedStatus(a, original, theory_);
    bool same = (mine == JustificationStatus::True && ref == oracle::JustifiedStatus::True) ||
                (mine == JustificationStatus::False && ref == oracle::JustifiedStatus::False) ||
                (mine == JustificationStatus::Unknown && ref == oracle::JustifiedStatus::Unknown);
    if (!same) return false;
  }
  return true;
}

PartialInterpretation Replayer::originalPart() const {
  PartialInterpretation original(theory_.numAtoms);
  for (Atom a = 1; a <= theory_.numAtoms; ++a) original.set(a, interp_.value(a));
  return original;
}

std::optional<std::string> Replayer::oracleMismatch() const {
  std::set<Literal> expected;
  const char* against = "reference";
  if (synchronized()) {
    expected = oracle::relevantSet(theory_, originalPart());
  } else {
    // Justification atoms lag behind the open atoms; check the fixpoint for
    // the justified flags the trace has delivered so far.
    against = "fixpoint of the delivered justified flags";
    expected = oracle::relevantSetFrom(theory_, [&](Literal l) {
      return justificationStatusFromState(l, *maps_, interp_) == JustificationStatus::True;
    });
  }
  for (Atom a = 1; a <= theory_.numAtoms; ++a) {
    for (Literal l : {Literal::positive(a), Literal::negative(a)}) {
      bool want = expected.count(l) != 0;
      if (tracker_->isRelevant(l) != want) {
        return "relevance of " + toString(l) + " is " + (want ? "0" : "1") + ", " + against + " says " +
               (want ? "1" : "0");
      }
    }
  }
  return std::nullopt;
}

}  // namespace pcid
