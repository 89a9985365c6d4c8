#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pcid/theory.hpp"

// Brute-force reference semantics. Everything here enumerates; the guards
// below keep it to desk-scale instances and larger inputs are refused with
// GuardExceeded rather than silently approximated.
namespace pcid::oracle {

inline constexpr std::size_t kMaxEnumeratedOpens = 20;
inline constexpr std::size_t kMaxDefinedForJustification = 12;

/// Well-founded model of d in the two-valued context openContext (values of
/// defined atoms in openContext are ignored). Alternating fixpoint.
PartialInterpretation wellFoundedModel(const Definition& d, const PartialInterpretation& openContext);

/// True iff the well-founded model is two-valued for every open interpretation.
bool isTotal(const Definition& d, std::size_t numAtoms);

/// I(p_T) = t and I is the well-founded model in context I|opens.
bool isModel(const PartialInterpretation& interp, const DefnfTheory& theory);

/// All two-valued models, ordered by the open assignment read as a binary
/// counter (lowest open atom is the least significant bit, f = 0).
std::vector<PartialInterpretation> enumerateModels(const DefnfTheory& theory);

/// A subgraph of the dependency graph.
struct Justification {
  std::set<Literal> nodes;
  std::set<std::pair<Literal, Literal>> edges;

  std::vector<Literal> leaves() const;
};

/// Internal nodes are defined and their child sets are direct justifications.
bool isJustification(const Justification& j, const Definition& d);
/// No leaf is a defined literal.
bool isTotalJustification(const Justification& j, const Definition& d);

/// V_I(J) by leaf inspection and simple-cycle enumeration.
TruthValue justificationValue(const Justification& j, const PartialInterpretation& interp);

/// A total justification containing l with value t, if one exists.
std::optional<Justification> findJustification(Literal l, const PartialInterpretation& interp,
                                               const DefnfTheory& theory);

bool isJustified(Literal l, const PartialInterpretation& interp, const DefnfTheory& theory);

enum class JustifiedStatus { True, False, Unknown };
JustifiedStatus justifiedStatus(Atom a, const PartialInterpretation& interp, const DefnfTheory& theory);

/// Least fixpoint of relevance for an arbitrary justified predicate.
std::set<Literal> relevantSetFrom(const DefnfTheory& theory, const std::function<bool(Literal)>& justified);

/// Relevant literals with justified status taken from isJustified.
std::set<Literal> relevantSet(const DefnfTheory& theory, const PartialInterpretation& interp);

/// Number of models agreeing with interp on its assigned open atoms.
/// Requires p_T justified in interp (Error otherwise).
std::uint64_t countModelsExtending(const DefnfTheory& theory, const PartialInterpretation& interp);

}  // namespace pcid::oracle
