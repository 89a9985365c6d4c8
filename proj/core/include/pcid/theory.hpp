#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcid/literal.hpp"

namespace pcid {

enum class Connective : std::uint8_t { And, Or };

/// head <- l1 (op) ... (op) ln.  An empty And body is true, an empty Or body false.
struct Rule {
  Atom head = 0;
  Connective connective = Connective::And;
  std::vector<Literal> body;

  bool isConjunctive() const { return connective == Connective::And; }
  bool operator==(const Rule&) const = default;
};

/// Kleene value of a rule body.
TruthValue evalBody(const Rule& rule, const PartialInterpretation& interp);

/// A DEFNF inductive definition: at most one rule per head atom.
class Definition {
 public:
  Definition() = default;

  /// Throws Error("atom defined twice") if rule.head already has a rule.
  void add(Rule rule);

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule* ruleFor(Atom head) const;
  bool defines(Atom a) const { return index_.count(a) != 0; }
  bool defines(Literal l) const { return defines(l.atom()); }
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }

  /// defs(d), ascending.
  std::vector<Atom> defined() const;
  /// opens(d) within 1..numAtoms, ascending.
  std::vector<Atom> opens(std::size_t numAtoms) const;
  /// Largest atom mentioned in any head or body.
  Atom maxAtom() const;

  bool operator==(const Definition& o) const { return rules_ == o.rules_; }

 private:
  std::vector<Rule> rules_;
  std::unordered_map<Atom, std::size_t> index_;
};

/// T = {p_T, Delta}. Names are optional labels for atoms and do not take part
/// in structural equality.
struct DefnfTheory {
  std::size_t numAtoms = 0;
  Atom theoryAtom = 0;
  Definition definition;
  std::vector<std::string> names;  // index = atom; may be empty

  /// Checks the DEFNF conditions; throws Error with the first violation.
  void validate() const;
  /// Symbolic name if one was recorded, otherwise the atom number.
  std::string nameOf(Atom a) const;
  std::string nameOf(Literal l) const;

  bool operator==(const DefnfTheory& o) const {
    return numAtoms == o.numAtoms && theoryAtom == o.theoryAtom && definition == o.definition;
  }
};

using Clause = std::vector<Literal>;

/// Clausal completion p <=> body for every rule of d.
std::vector<Clause> completionClauses(const Definition& d);

/// All direct justifications of l. Throws Error if l is open in d.
std::vector<std::vector<Literal>> directJustifications(Literal l, const Definition& d);

}  // namespace pcid
