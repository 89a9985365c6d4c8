#include "pcid/dot.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace pcid {

namespace {

std::string nodeId(Literal l, const DefnfTheory* names) {
  std::string label = names ? names->nameOf(l) : (l.isNegative() ? "~" : "") + std::to_string(l.atom());
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render(const std::set<Literal>& nodes,
                   const std::vector<std::pair<Literal, Literal>>& solid,
                   const std::vector<std::pair<Literal, Literal>>& dashed,
                   const DefnfTheory* names) {
  if (nodes.empty() && solid.empty() && dashed.empty()) return "digraph {}\n";
  std::ostringstream out;
  out << "digraph {\n";
  for (Literal n : nodes) out << "  " << nodeId(n, names) << ";\n";
  for (auto [a, b] : solid) out << "  " << nodeId(a, names) << " -> " << nodeId(b, names) << ";\n";
  for (auto [a, b] : dashed) {
    out << "  " << nodeId(a, names) << " -> " << nodeId(b, names) << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

bool flag(const std::vector<bool>& v, Literal l) { return l.index() < v.size() && v[l.index()]; }

}  // namespace

std::string exportDot(const DependencyGraph& graph, const DefnfTheory* names) {
  std::set<Literal> nodes;
  auto edges = graph.edges();
  for (auto [a, b] : edges) {
    nodes.insert(a);
    nodes.insert(b);
  }
  return render(nodes, edges, {}, names);
}

std::string exportDot(const RelevanceSnapshot& snap, const DefnfTheory* names) {
  std::set<Literal> nodes;
  std::vector<std::pair<Literal, Literal>> solid, dashed;
  if (snap.graph == nullptr) return render(nodes, solid, dashed, names);
  const DependencyGraph& g = *snap.graph;
  if (snap.root.valid()) nodes.insert(snap.root);

  for (auto [a, b] : g.edges()) {
    if (flag(snap.relevant, a) && flag(snap.relevant, b)) {
      solid.emplace_back(a, b);
      nodes.insert(a);
      nodes.insert(b);
    }
  }

  // Literals reachable from the root in the full graph.
  std::vector<bool> reach(2 * (g.numAtoms() + 1), false);
  if (snap.root.valid()) {
    std::vector<Literal> stack{snap.root};
    reach[snap.root.index()] = true;
    while (!stack.empty()) {
      Literal l = stack.back();
      stack.pop_back();
      for (Literal c : g.children(l)) {
        if (!reach[c.index()]) {
          reach[c.index()] = true;
          stack.push_back(c);
        }
      }
    }
  }
  auto candidate = [&](Literal l) {
    return reach[l.index()] && !flag(snap.relevant, l) && !flag(snap.justified, l);
  };

  // Tarjan restricted to candidate literals; edges inside a nontrivial SCC are loops.
  std::size_t n = reach.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onStack(n, false);
  std::vector<Literal> stack;
  int counter = 0, comps = 0;
  std::function<void(Literal)> strong = [&](Literal v) {
    index[v.index()] = low[v.index()] = counter++;
    stack.push_back(v);
    onStack[v.index()] = true;
    for (Literal w : g.children(v)) {
      if (!candidate(w)) continue;
      if (index[w.index()] < 0) {
        strong(w);
        low[v.index()] = std::min(low[v.index()], low[w.index()]);
      } else if (onStack[w.index()]) {
        low[v.index()] = std::min(low[v.index()], index[w.index()]);
      }
    }
    if (low[v.index()] == index[v.index()]) {
      Literal w;
      do {
        w = stack.back();
        stack.pop_back();
        onStack[w.index()] = false;
        comp[w.index()] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (std::size_t i = 2; i < n; ++i) {
    Literal l = Literal::fromIndex(i);
    if (candidate(l) && index[i] < 0) strong(l);
  }
  for (auto [a, b] : g.edges()) {
    if (candidate(a) && candidate(b) && comp[a.index()] == comp[b.index()]) {
      dashed.emplace_back(a, b);
      nodes.insert(a);
      nodes.insert(b);
    }
  }
  return render(nodes, solid, dashed, names);
}

}  // namespace pcid
