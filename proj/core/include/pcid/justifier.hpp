#pragma once

#include <optional>
#include <vector>

#include "pcid/theory.hpp"

namespace pcid {

/// Justification atoms j(p), one per defined atom of the original definition,
/// allocated after the original atoms in ascending order of p. deltaJ is the
/// original definition with every defined atom renamed to its j-atom.
struct JustificationMaps {
  std::size_t numOriginalAtoms = 0;
  std::size_t numAtoms = 0;  // original + j-atoms
  Definition deltaJ;

  /// p -> j(p), ~p -> ~j(p) for defined p; invalid literal otherwise.
  Literal toJustLit(Literal l) const;
  /// Inverse of toJustLit; invalid literal for non-j literals.
  Literal toNonjustLit(Literal l) const;
  bool isJustAtom(Atom a) const { return a < nonjustOf_.size() && nonjustOf_[a] != 0; }
  bool isOriginalDefined(Atom a) const { return a < justOf_.size() && justOf_[a] != 0; }
  bool isOriginalOpen(Atom a) const { return a >= 1 && a <= numOriginalAtoms && !isOriginalDefined(a); }

 private:
  friend JustificationMaps buildJustificationDefinition(const Definition&, std::size_t);
  std::vector<Atom> justOf_;     // original atom -> j-atom (0 if open)
  std::vector<Atom> nonjustOf_;  // j-atom -> original atom (0 otherwise)
};

JustificationMaps buildJustificationDefinition(const Definition& d, std::size_t numAtoms);

enum class JustificationStatus { True, False, Unknown };

/// Reads justified status off the extended interpretation: j(p) for defined
/// atoms, the atom itself for open atoms.
JustificationStatus justificationStatusFromState(Literal l, const JustificationMaps& maps,
                                                 const PartialInterpretation& extended);

/// What a tracker must hear when a literal becomes true or unknown.
struct JustificationEvent {
  enum class Kind { Justified, Unjustified };
  Kind kind;
  Literal literal;  // a literal over the original atoms
};

/// Translates an assignment event. For j-literals this forwards the
/// corresponding original literal; for open atoms the literal itself;
/// original defined literals produce nothing. `unassigned` marks a
/// backtrack: l is the literal that was true before.
std::optional<JustificationEvent> onAssign(Literal l, bool unassigned, const JustificationMaps& maps);

}  // namespace pcid
