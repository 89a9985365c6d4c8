#include "pcid/oracle.hpp"

#include <algorithm>
#include <map>

#include "pcid/dependency_graph.hpp"
#include "pcid/error.hpp"

namespace pcid::oracle {

namespace {

std::size_t atomCount(const Definition& d, const PartialInterpretation& interp) {
  return std::max<std::size_t>(interp.numAtoms(), d.maxAtom());
}

// Least model of d where negative occurrences of defined atoms read `assumed`
// and open literals read the context.
std::vector<bool> stableRevision(const Definition& d, const PartialInterpretation& context,
                                 const std::vector<bool>& assumed) {
  std::vector<bool> derived(assumed.size(), false);
  auto holds = [&](Literal l) {
    if (!d.defines(l)) return context.isTrue(l);
    return l.isPositive() ? static_cast<bool>(derived[l.atom()]) : !assumed[l.atom()];
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& r : d.rules()) {
      if (derived[r.head]) continue;
      bool fire = r.isConjunctive() ? std::all_of(r.body.begin(), r.body.end(), holds)
                                    : std::any_of(r.body.begin(), r.body.end(), holds);
      if (fire) {
        derived[r.head] = true;
        changed = true;
      }
    }
  }
  return derived;
}

void checkOpensGuard(std::size_t n) {
  if (n > kMaxEnumeratedOpens) {
    throw GuardExceeded("refusing to enumerate " + std::to_string(n) + " open atoms (limit " +
                        std::to_string(kMaxEnumeratedOpens) + ")");
  }
}

void checkJustificationGuard(const DefnfTheory& t) {
  if (t.definition.size() > kMaxDefinedForJustification) {
    throw GuardExceeded("refusing justification enumeration over " + std::to_string(t.definition.size()) +
                        " defined atoms (limit " + std::to_string(kMaxDefinedForJustification) + ")");
  }
}

// Calls f with every two-valued assignment of `free` layered over base.
template <typename F>
void forEachAssignment(const PartialInterpretation& base, const std::vector<Atom>& free, F&& f) {
  checkOpensGuard(free.size());
  PartialInterpretation cur = base;
  std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      cur.set(free[i], (mask >> i) & 1U ? TruthValue::True : TruthValue::False);
    }
    f(cur);
  }
}

}  // namespace

PartialInterpretation wellFoundedModel(const Definition& d, const PartialInterpretation& openContext) {
  std::size_t n = atomCount(d, openContext);
  std::vector<bool> lower(n + 1, false);
  std::vector<bool> upper;
  for (;;) {
    upper = stableRevision(d, openContext, lower);
    std::vector<bool> next = stableRevision(d, openContext, upper);
    if (next == lower) break;
    lower = std::move(next);
  }
  PartialInterpretation out(n);
  for (Atom a = 1; a <= n; ++a) {
    if (!d.defines(a)) {
      out.set(a, openContext.value(a));
    } else if (lower[a]) {
      out.set(a, TruthValue::True);
    } else if (!upper[a]) {
      out.set(a, TruthValue::False);
    }
  }
  return out;
}

bool isTotal(const Definition& d, std::size_t numAtoms) {
  numAtoms = std::max<std::size_t>(numAtoms, d.maxAtom());
  bool total = true;
  forEachAssignment(PartialInterpretation(numAtoms), d.opens(numAtoms), [&](const PartialInterpretation& ctx) {
    if (!total) return;
    PartialInterpretation wfm = wellFoundedModel(d, ctx);
    for (Atom a : d.defined()) {
      if (wfm.isUnknown(a)) {
        total = false;
        return;
      }
    }
  });
  return total;
}

bool isModel(const PartialInterpretation& interp, const DefnfTheory& theory) {
  for (Atom a = 1; a <= theory.numAtoms; ++a) {
    if (interp.isUnknown(a)) throw Error("isModel requires a two-valued interpretation");
  }
  if (!interp.isTrue(Literal::positive(theory.theoryAtom))) return false;
  PartialInterpretation wfm = wellFoundedModel(theory.definition, interp);
  for (Atom a = 1; a <= theory.numAtoms; ++a) {
    if (wfm.value(a) != interp.value(a)) return false;
  }
  return true;
}

std::vector<PartialInterpretation> enumerateModels(const DefnfTheory& theory) {
  std::vector<PartialInterpretation> models;
  forEachAssignment(PartialInterpretation(theory.numAtoms), theory.definition.opens(theory.numAtoms),
                    [&](const PartialInterpretation& ctx) {
                      PartialInterpretation wfm = wellFoundedModel(theory.definition, ctx);
                      if (wfm.isTwoValued() && wfm.isTrue(Literal::positive(theory.theoryAtom))) {
                        models.push_back(std::move(wfm));
                      }
                    });
  return models;
}

// ---------------------------------------------------------------------------
// Justifications
// ---------------------------------------------------------------------------

std::vector<Literal> Justification::leaves() const {
  std::vector<Literal> out;
  for (Literal n : nodes) {
    auto it = edges.lower_bound({n, Literal::fromIndex(0)});
    if (it == edges.end() || it->first != n) out.push_back(n);
  }
  return out;
}

bool isJustification(const Justification& j, const Definition& d) {
  std::map<Literal, std::vector<Literal>> kids;
  for (auto [a, b] : j.edges) {
    if (!j.nodes.count(a) || !j.nodes.count(b)) return false;
    kids[a].push_back(b);
  }
  for (auto& [node, cs] : kids) {
    if (!d.defines(node)) return false;
    std::sort(cs.begin(), cs.end());
    bool match = false;
    for (auto dj : directJustifications(node, d)) {
      std::sort(dj.begin(), dj.end());
      dj.erase(std::unique(dj.begin(), dj.end()), dj.end());
      if (dj == cs) match = true;
    }
    if (!match) return false;
  }
  return true;
}

bool isTotalJustification(const Justification& j, const Definition& d) {
  if (!isJustification(j, d)) return false;
  for (Literal leaf : j.leaves()) {
    if (d.defines(leaf)) return false;
  }
  return true;
}

TruthValue justificationValue(const Justification& j, const PartialInterpretation& interp) {
  bool unknownLeaf = false;
  for (Literal leaf : j.leaves()) {
    TruthValue v = interp.value(leaf);
    if (v == TruthValue::False) return TruthValue::False;
    if (v == TruthValue::Unknown) unknownLeaf = true;
  }

  // Simple cycles, each enumerated once from its smallest node.
  std::vector<Literal> order(j.nodes.begin(), j.nodes.end());
  std::map<Literal, std::vector<Literal>> succ;
  for (auto [a, b] : j.edges) succ[a].push_back(b);
  bool positiveCycle = false, mixedCycle = false;
  std::vector<Literal> path;
  std::set<Literal> onPath;
  std::function<void(Literal, Literal)> walk = [&](Literal start, Literal v) {
    for (Literal w : succ[v]) {
      if (w == start) {
        bool anyPos = false, anyNeg = false;
        for (Literal p : path) (p.isPositive() ? anyPos : anyNeg) = true;
        if (anyPos && !anyNeg) positiveCycle = true;
        if (anyPos && anyNeg) mixedCycle = true;
      } else if (start < w && !onPath.count(w)) {
        path.push_back(w);
        onPath.insert(w);
        walk(start, w);
        onPath.erase(w);
        path.pop_back();
      }
    }
  };
  for (Literal s : order) {
    path = {s};
    onPath = {s};
    walk(s, s);
    if (positiveCycle) return TruthValue::False;
  }
  if (unknownLeaf || mixedCycle) return TruthValue::Unknown;
  return TruthValue::True;
}

namespace {

// Backtracking over one direct-justification choice per reached defined
// literal. A partial graph is abandoned as soon as it has a non-true open
// leaf or a cycle through a positive literal, since neither can be repaired
// by expanding further nodes.
class JustificationSearch {
 public:
  JustificationSearch(const DefnfTheory& t, const PartialInterpretation& interp)
      : t_(t), interp_(interp), chosen_(2 * (t.numAtoms + 1)), expanded_(2 * (t.numAtoms + 1), false) {}

  std::optional<Justification> run(Literal root) {
    if (!t_.definition.defines(root)) {
      if (!interp_.isTrue(root)) return std::nullopt;
      Justification j;
      j.nodes.insert(root);
      return j;
    }
    if (!search({root})) return std::nullopt;
    Justification j;
    std::vector<Literal> stack{root};
    j.nodes.insert(root);
    while (!stack.empty()) {
      Literal l = stack.back();
      stack.pop_back();
      if (!expanded_[l.index()]) continue;
      for (Literal c : chosen_[l.index()]) {
        j.edges.insert({l, c});
        if (j.nodes.insert(c).second) stack.push_back(c);
      }
    }
    return j;
  }

 private:
  bool search(std::vector<Literal> pending) {
    while (!pending.empty() && expanded_[pending.back().index()]) pending.pop_back();
    if (pending.empty()) return true;
    Literal x = pending.back();
    pending.pop_back();

    for (auto& dj : directJustifications(x, t_.definition)) {
      bool leavesOk = std::all_of(dj.begin(), dj.end(), [&](Literal c) {
        return t_.definition.defines(c) || interp_.isTrue(c);
      });
      if (!leavesOk) continue;
      expanded_[x.index()] = true;
      chosen_[x.index()] = dj;
      if (!hasNonNegativeCycle()) {
        std::vector<Literal> next = pending;
        for (Literal c : dj) {
          if (t_.definition.defines(c) && !expanded_[c.index()]) next.push_back(c);
        }
        if (search(std::move(next))) return true;
      }
      expanded_[x.index()] = false;
      chosen_[x.index()].clear();
    }
    return false;
  }

  // Tarjan over expanded nodes; a nontrivial SCC (or a self loop) that
  // contains a positive literal holds a positive or mixed cycle.
  bool hasNonNegativeCycle() {
    std::size_t n = expanded_.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0;
    bool bad = false;
    std::function<void(std::size_t)> strong = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      onStack[v] = true;
      for (Literal c : chosen_[v]) {
        std::size_t w = c.index();
        if (!expanded_[w]) continue;
        if (index[w] < 0) {
          strong(w);
          low[v] = std::min(low[v], low[w]);
        } else if (onStack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = false;
          comp.push_back(w);
        } while (w != v);
        bool cyclic = comp.size() > 1 ||
                      std::find(chosen_[v].begin(), chosen_[v].end(), Literal::fromIndex(v)) != chosen_[v].end();
        if (cyclic) {
          for (std::size_t m : comp) {
            if (Literal::fromIndex(m).isPositive()) bad = true;
          }
        }
      }
    };
    for (std::size_t v = 0; v < n && !bad; ++v) {
      if (expanded_[v] && index[v] < 0) strong(v);
    }
    return bad;
  }

  const DefnfTheory& t_;
  const PartialInterpretation& interp_;
  std::vector<std::vector<Literal>> chosen_;
  std::vector<bool> expanded_;
};

}  // namespace

std::optional<Justification> findJustification(Literal l, const PartialInterpretation& interp,
                                               const DefnfTheory& theory) {
  checkJustificationGuard(theory);
  return JustificationSearch(theory, interp).run(l);
}

bool isJustified(Literal l, const PartialInterpretation& interp, const DefnfTheory& theory) {
  return findJustification(l, interp, theory).has_value();
}

JustifiedStatus justifiedStatus(Atom a, const PartialInterpretation& interp, const DefnfTheory& theory) {
  if (isJustified(Literal::positive(a), interp, theory)) return JustifiedStatus::True;
  if (isJustified(Literal::negative(a), interp, theory)) return JustifiedStatus::False;
  return JustifiedStatus::Unknown;
}

std::set<Literal> relevantSetFrom(const DefnfTheory& theory, const std::function<bool(Literal)>& justified) {
  std::set<Literal> relevant;
  Literal root = Literal::positive(theory.theoryAtom);
  if (justified(root)) return relevant;
  DependencyGraph g(theory.definition, theory.numAtoms);
  std::vector<Literal> stack{root};
  relevant.insert(root);
  while (!stack.empty()) {
    Literal l = stack.back();
    stack.pop_back();
    for (Literal c : g.children(l)) {
      if (!relevant.count(c) && !justified(c)) {
        relevant.insert(c);
        stack.push_back(c);
      }
    }
  }
  return relevant;
}

std::set<Literal> relevantSet(const DefnfTheory& theory, const PartialInterpretation& interp) {
  checkJustificationGuard(theory);
  std::map<Literal, bool> cache;
  return relevantSetFrom(theory, [&](Literal l) {
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    bool j = isJustified(l, interp, theory);
    cache.emplace(l, j);
    return j;
  });
}

std::uint64_t countModelsExtending(const DefnfTheory& theory, const PartialInterpretation& interp) {
  if (!isJustified(Literal::positive(theory.theoryAtom), interp, theory)) {
    throw Error("countModelsExtending requires the theory atom to be justified");
  }
  PartialInterpretation base(theory.numAtoms);
  std::vector<Atom> free;
  for (Atom a : theory.definition.opens(theory.numAtoms)) {
    if (interp.isUnknown(a)) free.push_back(a);
    else base.set(a, interp.value(a));
  }
  std::uint64_t count = 0;
  forEachAssignment(base, free, [&](const PartialInterpretation& ctx) {
    PartialInterpretation wfm = wellFoundedModel(theory.definition, ctx);
    if (wfm.isTwoValued() && wfm.isTrue(Literal::positive(theory.theoryAtom))) ++count;
  });
  return count;
}

}  // namespace pcid::oracle
