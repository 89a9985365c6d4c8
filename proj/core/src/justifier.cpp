#include "pcid/justifier.hpp"

#include <algorithm>

namespace pcid {

Literal JustificationMaps::toJustLit(Literal l) const {
  if (!isOriginalDefined(l.atom())) return {};
  Atom j = justOf_[l.atom()];
  return l.isPositive() ? Literal::positive(j) : Literal::negative(j);
}

Literal JustificationMaps::toNonjustLit(Literal l) const {
  if (!isJustAtom(l.atom())) return {};
  Atom p = nonjustOf_[l.atom()];
  return l.isPositive() ? Literal::positive(p) : Literal::negative(p);
}

JustificationMaps buildJustificationDefinition(const Definition& d, std::size_t numAtoms) {
  JustificationMaps m;
  m.numOriginalAtoms = std::max<std::size_t>(numAtoms, d.maxAtom());
  m.justOf_.assign(m.numOriginalAtoms + 1, 0);
  Atom next = static_cast<Atom>(m.numOriginalAtoms);
  for (Atom p : d.defined()) m.justOf_[p] = ++next;
  m.numAtoms = next;
  m.nonjustOf_.assign(m.numAtoms + 1, 0);
  for (Atom p = 1; p <= m.numOriginalAtoms; ++p) {
    if (m.justOf_[p]) m.nonjustOf_[m.justOf_[p]] = p;
  }
  auto rename = [&](Literal l) { return m.isOriginalDefined(l.atom()) ? m.toJustLit(l) : l; };
  for (const Rule& r : d.rules()) {
    Rule copy{m.justOf_[r.head], r.connective, {}};
    copy.body.reserve(r.body.size());
    for (Literal l : r.body) copy.body.push_back(rename(l));
    m.deltaJ.add(std::move(copy));
  }
  return m;
}

JustificationStatus justificationStatusFromState(Literal l, const JustificationMaps& maps,
                                                 const PartialInterpretation& extended) {
  Literal probe = maps.isOriginalDefined(l.atom()) ? maps.toJustLit(l) : l;
  switch (extended.value(probe)) {
    case TruthValue::True: return JustificationStatus::True;
    case TruthValue::False: return JustificationStatus::False;
    case TruthValue::Unknown: break;
  }
  return JustificationStatus::Unknown;
}

std::optional<JustificationEvent> onAssign(Literal l, bool unassigned, const JustificationMaps& maps) {
  Literal target;
  if (maps.isJustAtom(l.atom())) target = maps.toNonjustLit(l);
  else if (maps.isOriginalOpen(l.atom())) target = l;
  else return std::nullopt;
  return JustificationEvent{unassigned ? JustificationEvent::Kind::Unjustified : JustificationEvent::Kind::Justified,
                            target};
}

}  // namespace pcid
