#include "pcid/dependency_graph.hpp"

#include <algorithm>

namespace pcid {

namespace {

void sortUnique(std::vector<Literal>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

DependencyGraph::DependencyGraph(const Definition& d, std::size_t numAtoms)
    : numAtoms_(std::max<std::size_t>(numAtoms, d.maxAtom())),
      children_(2 * (numAtoms_ + 1)),
      parents_(2 * (numAtoms_ + 1)) {
  for (const Rule& r : d.rules()) {
    Literal head = Literal::positive(r.head);
    for (Literal l : r.body) {
      children_[head.index()].push_back(l);
      children_[(~head).index()].push_back(~l);
      parents_[l.index()].push_back(head);
      parents_[(~l).index()].push_back(~head);
    }
  }
  for (auto& v : children_) sortUnique(v);
  for (auto& v : parents_) sortUnique(v);
}

bool DependencyGraph::hasEdge(Literal from, Literal to) const {
  auto c = children(from);
  return std::binary_search(c.begin(), c.end(), to);
}

std::size_t DependencyGraph::numEdges() const {
  std::size_t n = 0;
  for (const auto& v : children_) n += v.size();
  return n;
}

std::vector<std::pair<Literal, Literal>> DependencyGraph::edges() const {
  std::vector<std::pair<Literal, Literal>> out;
  for (std::size_t i = 2; i < children_.size(); ++i) {
    for (Literal c : children_[i]) out.emplace_back(Literal::fromIndex(i), c);
  }
  return out;
}

}  // namespace pcid
