#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "pcid/dot.hpp"
#include "pcid/engine.hpp"
#include "pcid/error.hpp"
#include "pcid/io.hpp"
#include "pcid/oracle.hpp"
#include "pcid/replay.hpp"
#include "pcid/report.hpp"

using namespace pcid;

namespace {

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitParse = 2;
constexpr int kExitRefused = 3;

struct ConfigFlags {
  std::string relevance = "on";
  std::string stopOnJustified = "on";
  std::string onEmptyRelevant = "backtrack";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> maxConflicts;
  std::optional<double> timeLimit;
  bool checkInvariants = false;

  SolverConfig toConfig() const {
    SolverConfig c;
    c.relevanceFilter = relevance == "on";
    c.stopOnJustified = stopOnJustified == "on";
    c.emptyRelevantPolicy =
        onEmptyRelevant == "fallback" ? EmptyRelevantPolicy::Fallback : EmptyRelevantPolicy::Backtrack;
    c.seed = seed;
    c.maxConflicts = maxConflicts;
    c.timeLimitSeconds = timeLimit;
    c.checkInvariants = checkInvariants;
    return c;
  }
};

void addConfigFlags(CLI::App* cmd, ConfigFlags& f) {
  auto onOff = CLI::IsMember({"on", "off"});
  cmd->add_option("--relevance", f.relevance, "Filter decisions by relevance")->check(onOff);
  cmd->add_option("--stop-on-justified", f.stopOnJustified, "Stop once the theory atom is justified")->check(onOff);
  cmd->add_option("--on-empty-relevant", f.onEmptyRelevant, "Policy when nothing relevant is left")
      ->check(CLI::IsMember({"backtrack", "fallback"}));
  cmd->add_option("--seed", f.seed, "Seed for initial activity noise (0 = none)");
  cmd->add_option("--max-conflicts", f.maxConflicts, "Conflict budget")->check(CLI::NonNegativeNumber);
  cmd->add_option("--time-limit", f.timeLimit, "Time budget in seconds")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--check-invariants", f.checkInvariants, "Run expensive self-checks during search");
}

void writeText(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

PartialInterpretation parseAssignment(const std::string& text, std::size_t numAtoms) {
  PartialInterpretation interp(numAtoms);
  std::istringstream in(text);
  long long v = 0;
  while (in >> v) {
    if (v == 0) break;
    auto a = static_cast<std::size_t>(v < 0 ? -v : v);
    if (a > numAtoms) throw Error("assignment literal " + std::to_string(v) + " is out of range");
    interp.makeTrue(Literal::fromDimacs(static_cast<std::int32_t>(v)));
  }
  if (!in.eof() && in.fail()) throw Error("assignment must be a list of integers");
  return interp;
}

std::string literalList(const DefnfTheory& t, const std::set<Literal>& lits) {
  std::string out;
  for (Literal l : lits) out += (out.empty() ? "" : " ") + t.nameOf(l);
  return out;
}

int cmdSolve(const std::string& path, const ConfigFlags& flags, const std::string& statsPath,
             const std::string& dotPath) {
  DefnfTheory theory = loadTheory(path);
  auto start = std::chrono::steady_clock::now();
  Solver solver(theory, flags.toConfig());
  SolveResult r = solver.solve();
  auto wallMs =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  switch (r.status) {
    case SolveStatus::Sat:
      std::cout << "SATISFIABLE\n" << witnessLine(r.witness) << "\n";
      if (r.stats.stoppedEarly) {
        std::cout << "c models represented: ";
        if (r.modelsRepresented) std::cout << *r.modelsRepresented << "\n";
        else std::cout << "2^" << *r.freeOpens << "\n";
      }
      break;
    case SolveStatus::Unsat: std::cout << "UNSATISFIABLE\n"; break;
    case SolveStatus::Unknown: std::cout << "UNKNOWN\n"; break;
  }
  if (!statsPath.empty()) writeText(statsPath, statsJson(r, wallMs));
  if (!dotPath.empty()) {
    if (!solver.tracker()) throw Error("--dot needs --relevance=on");
    writeText(dotPath, exportDot(solver.tracker()->snapshot(), &theory));
  }
  if (r.status == SolveStatus::Sat) return kExitSat;
  if (r.status == SolveStatus::Unsat) return kExitUnsat;
  return 0;
}

int cmdReplay(const std::string& theoryPath, const std::string& tracePath, bool checkOracle,
              const std::string& dotPath) {
  Replayer replayer(loadTheory(theoryPath));
  std::vector<TraceEvent> events = parseTrace(readFile(tracePath));
  ReplayOptions opts;
  opts.checkOracle = checkOracle;
  ReplayReport report = replayer.run(events, opts);
  for (const std::string& line : report.output) std::cout << line << "\n";
  if (!dotPath.empty()) writeText(dotPath, exportDot(replayer.tracker().snapshot(), &replayer.theory()));
  if (!report.ok()) {
    for (const std::string& f : report.failures) std::cerr << "FAIL " << f << "\n";
    std::cerr << report.failures.size() << " check(s) failed over " << report.events << " events\n";
    return 1;
  }
  std::cerr << "ok: " << report.events << " events\n";
  return 0;
}

int cmdOracle(const std::string& sub, const std::string& path, const std::string& assignText, bool json) {
  DefnfTheory t = loadTheory(path);
  PartialInterpretation interp = parseAssignment(assignText, t.numAtoms);
  nlohmann::ordered_json out;

  if (sub == "total") {
    bool total = oracle::isTotal(t.definition, t.numAtoms);
    out["total"] = total;
    if (!json) std::cout << (total ? "total" : "not total") << "\n";
  } else if (sub == "wfm") {
    PartialInterpretation wfm = oracle::wellFoundedModel(t.definition, interp);
    std::string text;
    for (Atom a = 1; a <= t.numAtoms; ++a) {
      std::string v(1, toChar(wfm.value(a)));
      out["wfm"][t.nameOf(a)] = v;
      text += t.nameOf(a) + "=" + v + (a < t.numAtoms ? " " : "");
    }
    if (!json) std::cout << text << "\n";
  } else if (sub == "models") {
    auto models = oracle::enumerateModels(t);
    out["count"] = models.size();
    out["models"] = nlohmann::json::array();
    for (const auto& m : models) {
      std::vector<int> lits;
      for (Literal l : m.trueLiterals()) lits.push_back(l.toDimacs());
      out["models"].push_back(lits);
    }
    if (!json) {
      std::cout << models.size() << (models.size() == 1 ? " model" : " models") << "\n";
      for (const auto& m : models) std::cout << witnessLine(m) << "\n";
    }
  } else if (sub == "justified") {
    std::string text;
    for (Atom a = 1; a <= t.numAtoms; ++a) {
      const char* s = "u";
      switch (oracle::justifiedStatus(a, interp, t)) {
        case oracle::JustifiedStatus::True: s = "t"; break;
        case oracle::JustifiedStatus::False: s = "f"; break;
        case oracle::JustifiedStatus::Unknown: break;
      }
      out["justified"][t.nameOf(a)] = s;
      text += t.nameOf(a) + "=" + s + (a < t.numAtoms ? " " : "");
    }
    if (!json) std::cout << text << "\n";
  } else if (sub == "relevant") {
    auto rel = oracle::relevantSet(t, interp);
    out["relevant"] = nlohmann::json::array();
    for (Literal l : rel) out["relevant"].push_back(t.nameOf(l));
    if (!json) std::cout << literalList(t, rel) << "\n";
  } else if (sub == "count") {
    std::uint64_t n = oracle::countModelsExtending(t, interp);
    out["count"] = n;
    if (!json) std::cout << n << "\n";
  }
  if (json) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmdNormalize(const std::string& in, const std::string& outPath, const std::string& namesPath) {
  NormalizedTheory n = normalizeToDefnf(parsePcid(readFile(in)));
  std::string cid = writeCid(n.theory);
  if (outPath.empty()) std::cout << cid;
  else writeText(outPath, cid);
  if (!namesPath.empty()) writeText(namesPath, nameMapJson(n));
  return 0;
}

int cmdCompare(const std::string& path, const ConfigFlags& a, const ConfigFlags& b) {
  DefnfTheory theory = loadTheory(path);
  SolveResult ra = solve(theory, a.toConfig());
  SolveResult rb = solve(theory, b.toConfig());
  auto row = [](const char* name, std::uint64_t x, std::uint64_t y) {
    std::printf("%-18s %12llu %12llu\n", name, static_cast<unsigned long long>(x),
                static_cast<unsigned long long>(y));
  };
  std::printf("%-18s %12s %12s\n", "", "A", "B");
  std::printf("%-18s %12s %12s\n", "result", statusName(ra.status), statusName(rb.status));
  row("decisions", ra.stats.decisions, rb.stats.decisions);
  row("conflicts", ra.stats.conflicts, rb.stats.conflicts);
  row("propagations", ra.stats.propagations, rb.stats.propagations);
  row("unfounded_sets", ra.stats.unfoundedSets, rb.stats.unfoundedSets);
  row("relevance_queries", ra.stats.relevanceQueries, rb.stats.relevanceQueries);
  std::printf("%-18s %12s %12s\n", "stopped_early", ra.stats.stoppedEarly ? "yes" : "no",
              rb.stats.stoppedEarly ? "yes" : "no");
  bool decided = ra.status != SolveStatus::Unknown && rb.status != SolveStatus::Unknown;
  if (!decided) {
    std::printf("agreement: budget exhausted on %s\n",
                ra.status == SolveStatus::Unknown ? (rb.status == SolveStatus::Unknown ? "both sides" : "A") : "B");
    return 0;
  }
  bool agree = ra.status == rb.status;
  std::printf("agreement: %s\n", agree ? "yes" : "NO");
  return agree ? 0 : 1;
}

int cmdDot(const std::string& path, const std::string& tracePath, bool full) {
  Replayer replayer(loadTheory(path));
  if (full) {
    std::cout << exportDot(replayer.tracker().graph(), &replayer.theory());
    return 0;
  }
  if (!tracePath.empty()) replayer.run(parseTrace(readFile(tracePath)));
  std::cout << exportDot(replayer.tracker().snapshot(), &replayer.theory());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground PC(ID) solver with justification tracking and relevance filtering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pcid 0.1.0");

  ConfigFlags solveFlags;
  std::string solvePath, statsPath, solveDot;
  auto* solveCmd = app.add_subcommand("solve", "Solve a .cid or .pcid theory");
  solveCmd->add_option("theory", solvePath, "Theory file")->required()->check(CLI::ExistingFile);
  addConfigFlags(solveCmd, solveFlags);
  solveCmd->add_option("--stats-json", statsPath, "Write run statistics as JSON (- for stdout)");
  solveCmd->add_option("--dot", solveDot, "Write the final relevance graph as DOT");

  std::string replayTheory, replayTrace, replayDot;
  bool checkOracle = false;
  auto* replayCmd = app.add_subcommand("replay", "Replay a .trc trace against the relevance tracker");
  replayCmd->add_option("theory", replayTheory, "Theory file")->required()->check(CLI::ExistingFile);
  replayCmd->add_option("trace", replayTrace, "Trace file")->required()->check(CLI::ExistingFile);
  replayCmd->add_flag("--check-oracle", checkOracle, "Check every state against the reference relevant set");
  replayCmd->add_option("--dot", replayDot, "Write the final relevance graph as DOT");

  std::string oracleSub, oraclePath, oracleAssign;
  bool oracleJson = false;
  auto* oracleCmd = app.add_subcommand("oracle", "Brute-force reference semantics (small theories only)");
  oracleCmd->add_option("query", oracleSub, "wfm | models | justified | relevant | count | total")
      ->required()
      ->check(CLI::IsMember({"wfm", "models", "justified", "relevant", "count", "total"}));
  oracleCmd->add_option("theory", oraclePath, "Theory file")->required()->check(CLI::ExistingFile);
  oracleCmd->add_option("--assign", oracleAssign, "Partial interpretation as DIMACS literals, e.g. \"1 -3\"");
  oracleCmd->add_flag("--json", oracleJson, "Print JSON");

  std::string normIn, normOut, normNames;
  auto* normCmd = app.add_subcommand("normalize", "Normalize a .pcid theory to .cid");
  normCmd->add_option("input", normIn, ".pcid file")->required()->check(CLI::ExistingFile);
  normCmd->add_option("-o,--output", normOut, "Output .cid file (default stdout)");
  normCmd->add_option("--names", normNames, "Write the atom name map as JSON");

  std::string cmpPath;
  ConfigFlags cmpA, cmpB;
  cmpB.relevance = "off";
  auto* cmpCmd = app.add_subcommand("compare", "Run two configurations and tabulate their statistics");
  cmpCmd->add_option("theory", cmpPath, "Theory file")->required()->check(CLI::ExistingFile);
  auto onOff = CLI::IsMember({"on", "off"});
  auto policy = CLI::IsMember({"backtrack", "fallback"});
  cmpCmd->add_option("--a-relevance", cmpA.relevance, "Config A relevance filter")->check(onOff);
  cmpCmd->add_option("--a-stop-on-justified", cmpA.stopOnJustified, "Config A early stop")->check(onOff);
  cmpCmd->add_option("--a-on-empty-relevant", cmpA.onEmptyRelevant, "Config A policy")->check(policy);
  cmpCmd->add_option("--b-relevance", cmpB.relevance, "Config B relevance filter (default off)")->check(onOff);
  cmpCmd->add_option("--b-stop-on-justified", cmpB.stopOnJustified, "Config B early stop")->check(onOff);
  cmpCmd->add_option("--b-on-empty-relevant", cmpB.onEmptyRelevant, "Config B policy")->check(policy);
  cmpCmd->add_option("--seed", cmpA.seed, "Seed for both runs");
  cmpCmd->add_option("--max-conflicts", cmpA.maxConflicts, "Conflict budget per run");
  cmpCmd->add_option("--time-limit", cmpA.timeLimit, "Time budget per run in seconds");

  std::string dotPath, dotTrace;
  bool dotFull = false;
  auto* dotCmd = app.add_subcommand("dot", "Print the relevance graph (or the dependency graph) as DOT");
  dotCmd->add_option("theory", dotPath, "Theory file")->required()->check(CLI::ExistingFile);
  dotCmd->add_option("--trace", dotTrace, "Replay this trace first")->check(CLI::ExistingFile);
  dotCmd->add_flag("--full", dotFull, "Whole dependency graph instead of the relevance graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*solveCmd) return cmdSolve(solvePath, solveFlags, statsPath, solveDot);
    if (*replayCmd) return cmdReplay(replayTheory, replayTrace, checkOracle, replayDot);
    if (*oracleCmd) return cmdOracle(oracleSub, oraclePath, oracleAssign, oracleJson);
    if (*normCmd) return cmdNormalize(normIn, normOut, normNames);
    if (*cmpCmd) {
      cmpB.seed = cmpA.seed;
      cmpB.maxConflicts = cmpA.maxConflicts;
      cmpB.timeLimit = cmpA.timeLimit;
      return cmdCompare(cmpPath, cmpA, cmpB);
    }
    if (*dotCmd) return cmdDot(dotPath, dotTrace, dotFull);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const GuardExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
