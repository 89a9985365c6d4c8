#include "pcid/literal.hpp"

#include <algorithm>

namespace pcid {

char toChar(TruthValue v) {
  switch (v) {
    case TruthValue::True: return 't';
    case TruthValue::False: return 'f';
    case TruthValue::Unknown: break;
  }
  return 'u';
}

std::string toString(Literal l) { return std::to_string(l.toDimacs()); }

void PartialInterpretation::set(Atom a, TruthValue v) {
  if (a >= values_.size()) values_.resize(a + 1, TruthValue::Unknown);
  values_[a] = v;
}

bool PartialInterpretation::isTwoValued() const {
  return std::all_of(values_.begin() + (values_.empty() ? 0 : 1), values_.end(),
                     [](TruthValue v) { return v != TruthValue::Unknown; });
}

std::vector<Literal> PartialInterpretation::trueLiterals() const {
  std::vector<Literal> out;
  for (Atom a = 1; a < values_.size(); ++a) {
    if (values_[a] == TruthValue::True) out.push_back(Literal::positive(a));
    else if (values_[a] == TruthValue::False) out.push_back(Literal::negative(a));
  }
  return out;
}

bool PartialInterpretation::operator==(const PartialInterpretation& o) const {
  std::size_t n = std::max(values_.size(), o.values_.size());
  for (std::size_t a = 1; a < n; ++a) {
    if (value(static_cast<Atom>(a)) != o.value(static_cast<Atom>(a))) return false;
  }
  return true;
}

bool precisionLeq(const PartialInterpretation& a, const PartialInterpretation& b) {
  std::size_t n = std::max(a.numAtoms(), b.numAtoms());
  for (Atom p = 1; p <= n; ++p) {
    if (!precisionLeq(a.value(p), b.value(p))) return false;
  }
  return true;
}

PartialInterpretation restrict(const PartialInterpretation& interp, std::span<const Atom> keep) {
  PartialInterpretation out(interp.numAtoms());
  for (Atom a : keep) {
    if (a >= 1 && a <= interp.numAtoms()) out.set(a, interp.value(a));
  }
  return out;
}

PartialInterpretation interpretationOf(std::size_t numAtoms, std::span<const Literal> trueLits) {
  PartialInterpretation out(numAtoms);
  for (Literal l : trueLits) out.makeTrue(l);
  return out;
}

}  // namespace pcid
