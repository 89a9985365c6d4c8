#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pcid/theory.hpp"

namespace pcid {

/// The direct dependency relation over literals: (p, li) and (~p, ~li) for
/// every rule p <- l1 .. ln. Adjacency lists are sorted and duplicate free.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  DependencyGraph(const Definition& d, std::size_t numAtoms);

  std::size_t numAtoms() const { return numAtoms_; }
  std::span<const Literal> children(Literal l) const { return adjacency(children_, l); }
  std::span<const Literal> parents(Literal l) const { return adjacency(parents_, l); }
  bool hasEdge(Literal from, Literal to) const;
  std::size_t numEdges() const;
  /// All edges ordered by (from, to).
  std::vector<std::pair<Literal, Literal>> edges() const;

 private:
  static std::span<const Literal> adjacency(const std::vector<std::vector<Literal>>& adj, Literal l) {
    return l.index() < adj.size() ? std::span<const Literal>(adj[l.index()]) : std::span<const Literal>();
  }

  std::size_t numAtoms_ = 0;
  std::vector<std::vector<Literal>> children_;
  std::vector<std::vector<Literal>> parents_;
};

inline DependencyGraph buildDependencyGraph(const Definition& d, std::size_t numAtoms) {
  return DependencyGraph(d, numAtoms);
}

}  // namespace pcid
