#include <doctest.h>

#include <json.hpp>
#include <map>
#include <random>
#include <set>

#include "generators.hpp"
#include "pcid/error.hpp"
#include "pcid/io.hpp"
#include "pcid/oracle.hpp"

using namespace pcid;

namespace {
Literal L(int v) { return Literal::fromDimacs(v); }
std::string dataFile(const std::string& name) { return std::string(PCID_TEST_DATA_DIR) + "/" + name; }

Formula randomFormula(std::mt19937_64& rng, std::size_t numAtoms, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 0);
  std::uniform_int_distribution<Atom> atom(1, static_cast<Atom>(numAtoms));
  switch (kind(rng)) {
    case 1: return Formula::negation(randomFormula(rng, numAtoms, depth - 1));
    case 2:
    case 3: {
      std::vector<Formula> kids;
      int n = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int i = 0; i < n; ++i) kids.push_back(randomFormula(rng, numAtoms, depth - 1));
      return kind(rng) % 2 ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    default: {
      Literal l = Literal::positive(atom(rng));
      return std::bernoulli_distribution(0.3)(rng) ? Formula::lit(~l) : Formula::lit(l);
    }
  }
}
}  // namespace

TEST_CASE("cid parse and write round trip") {
  DefnfTheory t = loadTheory(dataFile("intro.cid"));
  CHECK(t.numAtoms == 10);
  CHECK(t.theoryAtom == 1);
  CHECK(t.definition.size() == 4);
  CHECK(parseCid(writeCid(t)) == t);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    DefnfTheory r = testing::randomTheory(rng, testing::TheoryShape{});
    CHECK(parseCid(writeCid(r)) == r);
  }
}

TEST_CASE("cid parse errors carry line numbers") {
  auto lineOf = [](const std::string& text) -> std::size_t {
    try {
      parseCid(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(lineOf("p cid 3\nt 1\nr 1 x 2 0\n") == 3);
  CHECK(lineOf("p cid 3\nt 1\nr 1 c 2\n") == 3);
  CHECK(lineOf("p cid 3\nt 1\nr 1 c 7 0\n") == 3);
  CHECK(lineOf("p cid 3\nt 1\nr 1 c 2 0\nr 1 d 3 0\n") == 4);
  CHECK(lineOf("t 1\n") == 1);
  CHECK_THROWS_AS(parseCid(""), ParseError);
}

TEST_CASE("pcid normalization of the four-rule theory") {
  PcidAst ast = parsePcid(readFile(dataFile("intro.pcid")));
  CHECK(ast.numAtoms() == 10);
  REQUIRE(ast.lookup("e"));
  NormalizedTheory n = normalizeToDefnf(ast);
  CHECK_FALSE(defnfViolation(n.theory));

  // Same models as the hand-written DEFNF version, up to renaming.
  DefnfTheory ref = loadTheory(dataFile("intro.cid"));
  const char* refNames[] = {"", "pT", "a", "b", "c", "d", "e", "f", "g", "h", "i"};
  auto project = [&](const PartialInterpretation& m, auto&& nameOf) {
    std::map<std::string, TruthValue> out;
    for (Atom a = 1; a <= 10; ++a) out[nameOf(a)] = m.value(a);
    return out;
  };
  std::set<std::map<std::string, TruthValue>> got, want;
  for (const auto& m : oracle::enumerateModels(n.theory)) {
    std::map<std::string, TruthValue> p;
    for (Atom a = 1; a <= n.numOriginalAtoms; ++a) p[ast.symbols[a]] = m.value(a);
    got.insert(p);
  }
  for (const auto& m : oracle::enumerateModels(ref)) want.insert(project(m, [&](Atom a) { return refNames[a]; }));
  CHECK(got.size() == want.size());
  CHECK(got == want);

  auto names = nlohmann::json::parse(nameMapJson(n));
  CHECK(names["original_atoms"] == n.numOriginalAtoms);
  CHECK(names["atoms"][std::to_string(*ast.lookup("e"))] == "e");
}

TEST_CASE("normalization preserves models of random constraints") {
  std::mt19937_64 rng(5);
  constexpr std::size_t kAtoms = 5;
  for (int round = 0; round < 100; ++round) {
    PcidAst ast;
    for (std::size_t a = 1; a <= kAtoms; ++a) ast.intern("x" + std::to_string(a));
    int numConstraints = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < numConstraints; ++k) ast.constraints.push_back(randomFormula(rng, kAtoms, 3));
    NormalizedTheory n = normalizeToDefnf(ast);
    REQUIRE(n.numOriginalAtoms == kAtoms);
    REQUIRE_FALSE(defnfViolation(n.theory));

    std::set<std::vector<TruthValue>> got, want;
    for (const auto& m : oracle::enumerateModels(n.theory)) {
      std::vector<TruthValue> v;
      for (Atom a = 1; a <= kAtoms; ++a) v.push_back(m.value(a));
      got.insert(v);
    }
    for (unsigned bits = 0; bits < (1U << kAtoms); ++bits) {
      PartialInterpretation I(kAtoms);
      std::vector<TruthValue> v;
      for (Atom a = 1; a <= kAtoms; ++a) {
        TruthValue tv = (bits >> (a - 1)) & 1U ? TruthValue::True : TruthValue::False;
        I.set(a, tv);
        v.push_back(tv);
      }
      bool all = true;
      for (const Formula& f : ast.constraints) all = all && evalFormula(f, I) == TruthValue::True;
      if (all) want.insert(v);
    }
    CHECK(got == want);
  }
}

TEST_CASE("pcid definitions keep their inductive semantics") {
  // p <- p has the unique model p:f, unlike its completion.
  PcidAst ast = parsePcid("(theory (constraint (not p)) (define (rule p p)))");
  NormalizedTheory n = normalizeToDefnf(ast);
  CHECK(oracle::enumerateModels(n.theory).size() == 1);
  PcidAst bad = parsePcid("(theory (constraint p) (define (rule p p)))");
  CHECK(oracle::enumerateModels(normalizeToDefnf(bad).theory).empty());
}

TEST_CASE("pcid parse errors") {
  CHECK_THROWS_AS(parsePcid("(theory (constraint (and a b)"), ParseError);
  CHECK_THROWS_AS(parsePcid("(theory (bogus a))"), ParseError);
  CHECK_THROWS_AS(parsePcid("(theory (define (rule (not a) b)))"), ParseError);
}

TEST_CASE("trace round trip") {
  std::string text = "+ 3\n+ -12\n? 4\n# expect -2 1\n- 3\n";
  auto events = parseTrace(text);
  REQUIRE(events.size() == 5);
  CHECK(events[0].kind == TraceEvent::Kind::BecomesTrue);
  CHECK(events[1].literal == L(-12));
  CHECK(events[2].kind == TraceEvent::Kind::QueryRelevant);
  CHECK(events[3].kind == TraceEvent::Kind::ExpectRelevant);
  CHECK(events[3].expected == true);
  CHECK(events[4].kind == TraceEvent::Kind::BecomesUnknown);
  CHECK(events[4].line == 5);
  CHECK(parseTrace(writeTrace(events)) == events);
  CHECK_THROWS_AS(parseTrace("* 3\n"), ParseError);
  CHECK_THROWS_AS(parseTrace("+ 0\n"), ParseError);
}
