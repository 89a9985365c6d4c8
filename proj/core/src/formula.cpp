#include "pcid/formula.hpp"

#include "pcid/error.hpp"

namespace pcid {

TruthValue evalFormula(const Formula& f, const PartialInterpretation& interp) {
  switch (f.kind) {
    case Formula::Kind::Literal:
      if (!f.literal.valid() || f.literal.atom() > interp.numAtoms()) {
        throw Error("formula mentions unknown atom " + toString(f.literal));
      }
      return interp.value(f.literal);
    case Formula::Kind::Not:
      return complement(evalFormula(f.children.at(0), interp));
    case Formula::Kind::And: {
      TruthValue acc = TruthValue::True;
      for (const Formula& c : f.children) {
        TruthValue v = evalFormula(c, interp);
        if (truthLeq(v, acc)) acc = v;
      }
      return acc;
    }
    case Formula::Kind::Or: {
      TruthValue acc = TruthValue::False;
      for (const Formula& c : f.children) {
        TruthValue v = evalFormula(c, interp);
        if (truthLeq(acc, v)) acc = v;
      }
      return acc;
    }
  }
  return TruthValue::Unknown;
}

}  // namespace pcid
