#include <algorithm>
#include <functional>
#include <map>

#include <json.hpp>

#include "pcid/error.hpp"
#include "pcid/io.hpp"

namespace pcid {

namespace {

class Normalizer {
 public:
  explicit Normalizer(const PcidAst& ast) : ast_(ast), symbols_(ast.symbols) {}

  NormalizedTheory run() {
    checkBound();
    auto bodies = mergeDefinitions();

    NormalizedTheory out;
    out.numOriginalAtoms = ast_.numAtoms();

    Atom theoryAtom = 0;
    if (ast_.constraints.size() == 1 && ast_.constraints[0].isLiteral() &&
        ast_.constraints[0].literal.isPositive() && bodies.count(ast_.constraints[0].literal.atom())) {
      theoryAtom = ast_.constraints[0].literal.atom();
    }

    for (const auto& [head, body] : bodies) emitRule(head, body);

    if (theoryAtom == 0) {
      theoryAtom = fresh("_pT");
      Rule top{theoryAtom, Connective::And, {}};
      for (const Formula& c : ast_.constraints) addUnique(top.body, toLiteral(c));
      rules_.push_back(std::move(top));
    }

    DefnfTheory& t = out.theory;
    t.numAtoms = symbols_.size() - 1;
    t.theoryAtom = theoryAtom;
    t.names = symbols_;
    for (Rule& r : rules_) t.definition.add(std::move(r));
    t.validate();
    return out;
  }

 private:
  void checkBound() const {
    std::function<void(const Formula&)> visit = [&](const Formula& f) {
      if (f.isLiteral()) {
        if (!f.literal.valid() || f.literal.atom() > ast_.numAtoms()) {
          throw Error("unbound atom " + toString(f.literal));
        }
      }
      for (const Formula& c : f.children) visit(c);
    };
    for (const Formula& c : ast_.constraints) visit(c);
    for (const auto& block : ast_.definitions) {
      for (const auto& r : block) {
        if (r.head == 0 || r.head > ast_.numAtoms()) throw Error("unbound head atom");
        visit(r.body);
      }
    }
  }

  // Several rules for one head inside a block become one disjunctive body.
  // Blocks are merged; a dependency cycle spanning two blocks is rejected
  // because merging would change the well-founded model.
  std::map<Atom, Formula> mergeDefinitions() const {
    std::map<Atom, Formula> bodies;
    std::map<Atom, std::size_t> blockOf;
    for (std::size_t b = 0; b < ast_.definitions.size(); ++b) {
      std::map<Atom, std::vector<Formula>> local;
      for (const auto& r : ast_.definitions[b]) {
        auto it = blockOf.find(r.head);
        if (it != blockOf.end() && it->second != b) {
          throw Error("atom '" + ast_.symbols[r.head] + "' defined in two definitions");
        }
        blockOf[r.head] = b;
        local[r.head].push_back(r.body);
      }
      for (auto& [head, fs] : local) {
        bodies[head] = fs.size() == 1 ? std::move(fs[0]) : Formula::disjunction(std::move(fs));
      }
    }
    if (ast_.definitions.size() > 1) checkCrossBlockCycles(bodies, blockOf);
    return bodies;
  }

  static void collectAtoms(const Formula& f, std::vector<Atom>& out) {
    if (f.isLiteral()) out.push_back(f.literal.atom());
    for (const Formula& c : f.children) collectAtoms(c, out);
  }

  void checkCrossBlockCycles(const std::map<Atom, Formula>& bodies,
                             const std::map<Atom, std::size_t>& blockOf) const {
    // Tarjan over defined atoms.
    std::map<Atom, std::vector<Atom>> succ;
    for (const auto& [head, body] : bodies) {
      std::vector<Atom> atoms;
      collectAtoms(body, atoms);
      for (Atom a : atoms) {
        if (bodies.count(a)) succ[head].push_back(a);
      }
    }
    std::map<Atom, int> index, low;
    std::vector<Atom> stack;
    std::map<Atom, bool> onStack;
    int counter = 0;
    std::function<void(Atom)> strong = [&](Atom v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      onStack[v] = true;
      for (Atom w : succ[v]) {
        if (!index.count(w)) {
          strong(w);
          low[v] = std::min(low[v], low[w]);
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::size_t block = blockOf.at(v);
        Atom w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = false;
          if (blockOf.at(w) != block) {
            throw Error("definitions are mutually dependent through '" + ast_.symbols[w] + "'");
          }
        } while (w != v);
      }
    };
    for (const auto& [head, body] : bodies) {
      if (!index.count(head)) strong(head);
    }
  }

  Atom fresh(const std::string& base) {
    std::string name = base;
    if (base != "_pT" || std::find(symbols_.begin(), symbols_.end(), name) != symbols_.end()) {
      do {
        name = (base == "_pT" ? "_pT" : "_x") + std::to_string(++freshCounter_);
      } while (std::find(symbols_.begin(), symbols_.end(), name) != symbols_.end());
    }
    symbols_.push_back(name);
    return static_cast<Atom>(symbols_.size() - 1);
  }

  static void addUnique(std::vector<Literal>& body, Literal l) {
    if (std::find(body.begin(), body.end(), l) == body.end()) body.push_back(l);
  }

  // A literal standing for f: f itself when it is a (possibly negated)
  // literal, otherwise a fresh atom whose rule captures f.
  Literal toLiteral(const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::Literal:
        return f.literal;
      case Formula::Kind::Not:
        return ~toLiteral(f.children[0]);
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        Atom x = fresh("_x");
        emitRule(x, f);
        return Literal::positive(x);
      }
    }
    return {};
  }

  void emitRule(Atom head, const Formula& body) {
    Rule r{head, Connective::Or, {}};
    if (body.kind == Formula::Kind::And || body.kind == Formula::Kind::Or) {
      r.connective = body.kind == Formula::Kind::And ? Connective::And : Connective::Or;
      // Reserve the slot so the rule order follows heads before their subformulas.
      std::size_t slot = rules_.size();
      rules_.push_back({});
      for (const Formula& c : body.children) addUnique(r.body, toLiteral(c));
      rules_[slot] = std::move(r);
      return;
    }
    r.body.push_back(toLiteral(body));
    rules_.push_back(std::move(r));
  }

  const PcidAst& ast_;
  std::vector<std::string> symbols_;
  std::vector<Rule> rules_;
  std::size_t freshCounter_ = 0;
};

}  // namespace

NormalizedTheory normalizeToDefnf(const PcidAst& ast) { return Normalizer(ast).run(); }

std::string nameMapJson(const NormalizedTheory& normalized) {
  nlohmann::ordered_json atoms = nlohmann::ordered_json::object();
  const DefnfTheory& t = normalized.theory;
  for (Atom a = 1; a <= t.numAtoms; ++a) atoms[std::to_string(a)] = t.nameOf(a);
  nlohmann::ordered_json j;
  j["atoms"] = atoms;
  j["theory_atom"] = t.theoryAtom;
  j["original_atoms"] = normalized.numOriginalAtoms;
  return j.dump(2);
}

std::optional<std::string> defnfViolation(const DefnfTheory& theory) {
  if (theory.theoryAtom == 0 || theory.theoryAtom > theory.numAtoms) return "theory atom out of range";
  if (!theory.definition.defines(theory.theoryAtom)) return "theory atom is not defined";
  std::vector<bool> seen(theory.numAtoms + 1, false);
  for (const Rule& r : theory.definition.rules()) {
    if (r.head == 0 || r.head > theory.numAtoms) return "rule head out of range";
    if (seen[r.head]) return "atom " + std::to_string(r.head) + " defined twice";
    seen[r.head] = true;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      Literal l = r.body[i];
      if (!l.valid() || l.atom() > theory.numAtoms) return "body literal out of range";
      for (std::size_t k = 0; k < i; ++k) {
        if (r.body[k] == l) return "duplicate body literal in rule for " + std::to_string(r.head);
      }
    }
  }
  return std::nullopt;
}

}  // namespace pcid
