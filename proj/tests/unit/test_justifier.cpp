#include <doctest.h>

#include "pcid/io.hpp"
#include "pcid/justifier.hpp"

using namespace pcid;

namespace {
Literal L(int v) { return Literal::fromDimacs(v); }
std::string dataFile(const std::string& name) { return std::string(PCID_TEST_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("justification atoms follow the defined atoms") {
  DefnfTheory t = loadTheory(dataFile("intro.cid"));
  JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
  CHECK(m.numOriginalAtoms == 10);
  CHECK(m.numAtoms == 14);
  CHECK(m.toJustLit(L(1)) == L(11));
  CHECK(m.toJustLit(L(2)) == L(12));
  CHECK(m.toJustLit(L(-3)) == L(-13));
  CHECK(m.toJustLit(L(6)) == L(14));
  CHECK_FALSE(m.toJustLit(L(4)).valid());
  CHECK(m.toNonjustLit(L(-14)) == L(-6));
  CHECK_FALSE(m.toNonjustLit(L(5)).valid());
  CHECK(m.isJustAtom(12));
  CHECK_FALSE(m.isJustAtom(2));
  CHECK(m.isOriginalDefined(6));
  CHECK(m.isOriginalOpen(7));
  CHECK_FALSE(m.isOriginalOpen(11));
}

TEST_CASE("justification definition of the c1..c4 definition") {
  DefnfTheory t = loadTheory(dataFile("justdef.cid"));
  JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
  CHECK(m.numAtoms == 17);
  REQUIRE(m.deltaJ.size() == 6);
  CHECK(*m.deltaJ.ruleFor(12) == Rule{12, Connective::And, {L(13), L(14), L(15), L(16)}});
  CHECK(*m.deltaJ.ruleFor(13) == Rule{13, Connective::Or, {L(-8), L(-10)}});
  CHECK(*m.deltaJ.ruleFor(14) == Rule{14, Connective::Or, {L(7), L(8), L(-9)}});
  CHECK(*m.deltaJ.ruleFor(15) == Rule{15, Connective::Or, {L(-8), L(11), L(-17)}});
  CHECK(*m.deltaJ.ruleFor(16) == Rule{16, Connective::Or, {L(10), L(17), L(-7)}});
  CHECK(*m.deltaJ.ruleFor(17) == Rule{17, Connective::Or, {L(8), L(10)}});
}

TEST_CASE("justified status read off the state") {
  DefnfTheory t = loadTheory(dataFile("cycle.cid"));
  JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
  PartialInterpretation I(m.numAtoms);
  I.makeTrue(L(2));
  I.makeTrue(L(-3));  // original p: ignored for justification
  CHECK(justificationStatusFromState(L(2), m, I) == JustificationStatus::True);
  CHECK(justificationStatusFromState(L(-2), m, I) == JustificationStatus::False);
  CHECK(justificationStatusFromState(L(3), m, I) == JustificationStatus::Unknown);
  I.makeTrue(L(-6));
  CHECK(justificationStatusFromState(L(-3), m, I) == JustificationStatus::True);
  CHECK(justificationStatusFromState(L(3), m, I) == JustificationStatus::False);
}

TEST_CASE("assignment events reaching the tracker") {
  DefnfTheory t = loadTheory(dataFile("cycle.cid"));
  JustificationMaps m = buildJustificationDefinition(t.definition, t.numAtoms);
  auto e = onAssign(L(-6), false, m);
  REQUIRE(e);
  CHECK(e->kind == JustificationEvent::Kind::Justified);
  CHECK(e->literal == L(-3));
  e = onAssign(L(2), true, m);
  REQUIRE(e);
  CHECK(e->kind == JustificationEvent::Kind::Unjustified);
  CHECK(e->literal == L(2));
  CHECK_FALSE(onAssign(L(3), false, m));
}
