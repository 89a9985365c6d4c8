#pragma once

#include <string>
#include <vector>

#include "pcid/dependency_graph.hpp"

namespace pcid {

/// Relevance state captured for rendering. Flags are indexed by Literal::index().
struct RelevanceSnapshot {
  const DependencyGraph* graph = nullptr;
  Literal root;
  std::vector<bool> relevant;
  std::vector<bool> justified;
};

/// Whole dependency graph as a Graphviz digraph.
std::string exportDot(const DependencyGraph& graph, const DefnfTheory* names = nullptr);

/// The relevance graph: every dd edge between relevant literals, solid.
/// Dependency cycles among unjustified irrelevant literals reachable from the
/// root are drawn dashed.
std::string exportDot(const RelevanceSnapshot& snapshot, const DefnfTheory* names = nullptr);

}  // namespace pcid
