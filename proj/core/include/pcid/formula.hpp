#pragma once

#include <vector>

#include "pcid/literal.hpp"

namespace pcid {

/// Propositional formula tree over literals.
struct Formula {
  enum class Kind { Literal, Not, And, Or };

  Kind kind = Kind::Literal;
  Literal literal;
  std::vector<Formula> children;

  static Formula lit(Literal l) { return Formula{Kind::Literal, l, {}}; }
  static Formula negation(Formula f) {
    Formula out{Kind::Not, {}, {}};
    out.children.push_back(std::move(f));
    return out;
  }
  static Formula conjunction(std::vector<Formula> fs) { return Formula{Kind::And, {}, std::move(fs)}; }
  static Formula disjunction(std::vector<Formula> fs) { return Formula{Kind::Or, {}, std::move(fs)}; }

  bool isLiteral() const { return kind == Kind::Literal; }
  bool operator==(const Formula&) const = default;
};

/// Kleene three-valued evaluation. Throws Error when an atom lies outside I's table.
TruthValue evalFormula(const Formula& f, const PartialInterpretation& interp);

}  // namespace pcid
