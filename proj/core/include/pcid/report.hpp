#pragma once

#include <cstdint>
#include <string>

#include "pcid/engine.hpp"

namespace pcid {

/// "v <lit> ... 0" with unassigned atoms left out.
std::string witnessLine(const PartialInterpretation& witness);

/// Run statistics as a JSON object (see docs/stats.schema.json).
std::string statsJson(const SolveResult& result, std::int64_t wallMs);

const char* statusName(SolveStatus s);

}  // namespace pcid
