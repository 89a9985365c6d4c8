#include "pcid/report.hpp"

#include <json.hpp>

namespace pcid {

std::string witnessLine(const PartialInterpretation& witness) {
  std::string out = "v";
  for (Literal l : witness.trueLiterals()) out += " " + toString(l);
  out += " 0";
  return out;
}

const char* statusName(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: break;
  }
  return "unknown";
}

std::string statsJson(const SolveResult& result, std::int64_t wallMs) {
  nlohmann::ordered_json j;
  j["result"] = statusName(result.status);
  j["decisions"] = result.stats.decisions;
  j["conflicts"] = result.stats.conflicts;
  j["propagations"] = result.stats.propagations;
  j["unfounded_sets"] = result.stats.unfoundedSets;
  j["relevance_queries"] = result.stats.relevanceQueries;
  j["stopped_early"] = result.stats.stoppedEarly;
  if (result.modelsRepresented) j["models_represented"] = *result.modelsRepresented;
  else j["models_represented"] = nullptr;
  if (result.freeOpens) j["free_opens"] = *result.freeOpens;
  else j["free_opens"] = nullptr;
  j["wall_ms"] = wallMs;
  return j.dump(2) + "\n";
}

}  // namespace pcid
