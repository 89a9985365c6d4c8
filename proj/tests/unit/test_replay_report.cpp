#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "pcid/engine.hpp"
#include "pcid/error.hpp"
#include "pcid/io.hpp"
#include "pcid/replay.hpp"
#include "pcid/report.hpp"

using namespace pcid;

namespace {
std::string dataFile(const std::string& name) { return std::string(PCID_TEST_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("sample traces replay cleanly against the reference") {
  for (auto [theory, trace] : {std::pair{"cycle.cid", "cycle.trc"}, std::pair{"intro.cid", "intro.trc"}}) {
    Replayer r(loadTheory(dataFile(theory)));
    ReplayOptions opts;
    opts.checkOracle = true;
    opts.checkInvariants = true;
    ReplayReport rep = r.run(parseTrace(readFile(dataFile(trace))), opts);
    CHECK(rep.ok());
    CHECK(rep.events > 0);
  }
}

TEST_CASE("queries and failed expectations") {
  Replayer r(loadTheory(dataFile("cycle.cid")));
  ReplayReport rep = r.run(parseTrace("? 3\n# expect 3 0\n+ 2\n+ 5\n? 3\n"));
  CHECK(rep.output == std::vector<std::string>{"3 1", "3 0"});
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].find("line 2") != std::string::npos);
  CHECK(r.interpretation().isTrue(Literal::positive(5)));
}

TEST_CASE("ordering errors stop the replay") {
  Replayer r(loadTheory(dataFile("intro.cid")));
  CHECK_THROWS_AS(r.run(parseTrace(readFile(dataFile("bad_order.trc")))), Error);
}

TEST_CASE("lagging justification atoms are checked against the delivered flags") {
  Replayer r(loadTheory(dataFile("cycle.cid")));
  ReplayReport rep;
  r.apply(TraceEvent{TraceEvent::Kind::BecomesTrue, Literal::positive(2), std::nullopt, 1}, rep);
  CHECK_FALSE(r.synchronized());
  CHECK_FALSE(r.oracleMismatch());
  r.apply(TraceEvent{TraceEvent::Kind::BecomesTrue, Literal::positive(5), std::nullopt, 2}, rep);
  CHECK_FALSE(r.oracleMismatch());
}

TEST_CASE("witness line and statistics object") {
  SolveResult r = solve(loadTheory(dataFile("intro.cid")));
  CHECK(witnessLine(r.witness) == "v 1 2 3 4 5 0");
  CHECK(std::string(statusName(SolveStatus::Unsat)) == "unsat");

  auto stats = nlohmann::ordered_json::parse(statsJson(r, 7));
  std::ifstream in(std::string(PCID_DOCS_DIR) + "/stats.schema.json");
  auto schema = nlohmann::json::parse(in);
  std::vector<std::string> keys;
  for (auto& [k, v] : stats.items()) keys.push_back(k);
  CHECK(keys == schema["required"].get<std::vector<std::string>>());
  CHECK(stats["result"] == "sat");
  CHECK(stats["stopped_early"] == true);
  CHECK(stats["models_represented"] == 16);
  CHECK(stats["free_opens"] == 4);
  CHECK(stats["wall_ms"] == 7);
  for (auto& [k, v] : stats.items()) {
    auto prop = schema["properties"][k];
    if (prop.contains("minimum") && v.is_number()) CHECK(v.get<double>() >= prop["minimum"].get<double>());
  }

  SolveResult u = solve(loadTheory(dataFile("contradiction.cid")));
  CHECK(nlohmann::json::parse(statsJson(u, 0))["models_represented"].is_null());
}
