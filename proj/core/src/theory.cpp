#include "pcid/theory.hpp"

#include <algorithm>

#include "pcid/error.hpp"

namespace pcid {

TruthValue evalBody(const Rule& rule, const PartialInterpretation& interp) {
  if (rule.isConjunctive()) {
    TruthValue acc = TruthValue::True;
    for (Literal l : rule.body) {
      TruthValue v = interp.value(l);
      if (v == TruthValue::False) return v;
      if (v == TruthValue::Unknown) acc = v;
    }
    return acc;
  }
  TruthValue acc = TruthValue::False;
  for (Literal l : rule.body) {
    TruthValue v = interp.value(l);
    if (v == TruthValue::True) return v;
    if (v == TruthValue::Unknown) acc = v;
  }
  return acc;
}

void Definition::add(Rule rule) {
  if (rule.head == 0) throw Error("rule head must be a positive atom");
  if (defines(rule.head)) throw Error("atom defined twice: " + std::to_string(rule.head));
  index_.emplace(rule.head, rules_.size());
  rules_.push_back(std::move(rule));
}

const Rule* Definition::ruleFor(Atom head) const {
  auto it = index_.find(head);
  return it == index_.end() ? nullptr : &rules_[it->second];
}

std::vector<Atom> Definition::defined() const {
  std::vector<Atom> out;
  out.reserve(rules_.size());
  for (const Rule& r : rules_) out.push_back(r.head);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Atom> Definition::opens(std::size_t numAtoms) const {
  std::vector<Atom> out;
  for (Atom a = 1; a <= numAtoms; ++a) {
    if (!defines(a)) out.push_back(a);
  }
  return out;
}

Atom Definition::maxAtom() const {
  Atom m = 0;
  for (const Rule& r : rules_) {
    m = std::max(m, r.head);
    for (Literal l : r.body) m = std::max(m, l.atom());
  }
  return m;
}

void DefnfTheory::validate() const {
  if (theoryAtom == 0 || theoryAtom > numAtoms) throw Error("theory atom out of range");
  if (!definition.defines(theoryAtom)) throw Error("theory atom is not defined");
  if (definition.maxAtom() > numAtoms) throw Error("definition mentions an atom beyond the atom table");
  for (const Rule& r : definition.rules()) {
    for (Literal l : r.body) {
      if (!l.valid()) throw Error("invalid literal in body of " + std::to_string(r.head));
    }
  }
}

std::string DefnfTheory::nameOf(Atom a) const {
  if (a < names.size() && !names[a].empty()) return names[a];
  return std::to_string(a);
}

std::string DefnfTheory::nameOf(Literal l) const {
  return (l.isNegative() ? "~" : "") + nameOf(l.atom());
}

std::vector<Clause> completionClauses(const Definition& d) {
  std::vector<Clause> out;
  for (const Rule& r : d.rules()) {
    Literal head = Literal::positive(r.head);
    // The long clause carries the head with the polarity that the body forces.
    Clause big;
    big.reserve(r.body.size() + 1);
    if (r.isConjunctive()) {
      big.push_back(head);
      for (Literal l : r.body) {
        out.push_back({~head, l});
        big.push_back(~l);
      }
    } else {
      big.push_back(~head);
      for (Literal l : r.body) {
        out.push_back({head, ~l});
        big.push_back(l);
      }
    }
    out.push_back(std::move(big));
  }
  return out;
}

std::vector<std::vector<Literal>> directJustifications(Literal l, const Definition& d) {
  const Rule* r = d.ruleFor(l.atom());
  if (r == nullptr) throw Error("no direct justification for open literal " + toString(l));
  std::vector<std::vector<Literal>> out;
  bool conj = r->isConjunctive();
  if (l.isPositive()) {
    if (conj) {
      out.push_back(r->body);
    } else {
      for (Literal b : r->body) out.push_back({b});
    }
  } else {
    if (conj) {
      for (Literal b : r->body) out.push_back({~b});
    } else {
      std::vector<Literal> all;
      for (Literal b : r->body) all.push_back(~b);
      out.push_back(std::move(all));
    }
  }
  return out;
}

}  // namespace pcid
