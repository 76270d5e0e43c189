#include "idslab/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace idslab {

PeriodicGraph::PeriodicGraph(GroupSpec spec, int fiberSize,
                             std::vector<std::pair<int, int>> intraEdges,
                             std::vector<InterEdge> interEdges)
    : spec_(std::move(spec)),
      fiberSize_(fiberSize),
      intraEdges_(std::move(intraEdges)),
      interEdges_(std::move(interEdges)) {
  if (fiberSize_ < 1) throw std::invalid_argument("PeriodicGraph: fiberSize must be >= 1");
  for (const auto& [i, j] : intraEdges_) {
    if (i < 0 || i >= fiberSize_ || j < 0 || j >= fiberSize_ || i == j) {
      throw std::invalid_argument("PeriodicGraph: bad intra edge");
    }
  }
  for (const auto& e : interEdges_) {
    if (e.fromFiber < 0 || e.fromFiber >= fiberSize_ || e.toFiber < 0 ||
        e.toFiber >= fiberSize_) {
      throw std::invalid_argument("PeriodicGraph: bad inter edge fiber index");
    }
    if (isIdentity(e.generator) && e.fromFiber == e.toFiber) {
      throw std::invalid_argument("PeriodicGraph: self-loop inter edge");
    }
  }
}

PeriodicGraph PeriodicGraph::cayley(GroupSpec spec) {
  std::vector<InterEdge> inter;
  for (const GroupElement& s : spec.generators()) {
    if (isIdentity(s)) continue;
    inter.push_back({s, 0, 0});
  }
  return PeriodicGraph(std::move(spec), 1, {}, std::move(inter));
}

std::vector<Vertex> PeriodicGraph::neighbors(const Vertex& v) const {
  std::vector<Vertex> out;
  for (const auto& [i, j] : intraEdges_) {
    if (v.fiber == i) out.push_back({v.g, j});
    if (v.fiber == j) out.push_back({v.g, i});
  }
  for (const auto& e : interEdges_) {
    if (v.fiber == e.fromFiber) out.push_back({multiply(v.g, e.generator), e.toFiber});
    if (v.fiber == e.toFiber) out.push_back({multiply(v.g, inverse(e.generator)), e.fromFiber});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int PeriodicGraph::degree(const Vertex& v) const {
  return static_cast<int>(neighbors(v).size());
}

int PeriodicGraph::maxDegree() const {
  int best = 0;
  for (int i = 0; i < fiberSize_; ++i) {
    best = std::max(best, degree({spec_.identity(), i}));
  }
  return best;
}

bool PeriodicGraph::hasEdge(const Vertex& v, const Vertex& w) const {
  auto nb = neighbors(v);
  return std::binary_search(nb.begin(), nb.end(), w);
}

VertexSet::VertexSet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

bool VertexSet::contains(const Vertex& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

VertexSet VertexSet::unionWith(const VertexSet& other) const {
  std::vector<Vertex> out;
  out.reserve(size() + other.size());
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  VertexSet r;
  r.vertices_ = std::move(out);
  return r;
}

VertexSet VertexSet::differenceWith(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
  VertexSet r;
  r.vertices_ = std::move(out);
  return r;
}

VertexSet VertexSet::symmetricDifference(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_symmetric_difference(begin(), end(), other.begin(), other.end(),
                                std::back_inserter(out));
  VertexSet r;
  r.vertices_ = std::move(out);
  return r;
}

VertexSet VertexSet::intersectWith(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(out));
  VertexSet r;
  r.vertices_ = std::move(out);
  return r;
}

bool VertexSet::isSubsetOf(const VertexSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

void VertexSet::writeText(std::ostream& os) const {
  for (const Vertex& v : vertices_) {
    os << v.g.c[0] << ' ' << v.g.c[1] << ' ' << v.g.c[2] << ' ' << v.fiber << '\n';
  }
}

VertexSet phi(const std::vector<GroupElement>& indexSet, const PeriodicGraph& graph) {
  if (indexSet.empty()) throw std::invalid_argument("phi: empty index set");
  std::vector<Vertex> out;
  out.reserve(indexSet.size() * graph.fiberSize());
  for (const GroupElement& g : indexSet) {
    for (int i = 0; i < graph.fiberSize(); ++i) out.push_back({g, i});
  }
  return VertexSet(std::move(out));
}

std::optional<int> graphDistance(const PeriodicGraph& graph, const Vertex& v,
                                 const Vertex& w, int searchCap) {
  if (v == w) return 0;
  std::vector<Vertex> visited{v};
  std::vector<Vertex> frontier{v};
  for (int d = 1; d <= searchCap; ++d) {
    std::vector<Vertex> next;
    for (const Vertex& x : frontier) {
      for (const Vertex& y : graph.neighbors(x)) {
        if (!std::binary_search(visited.begin(), visited.end(), y)) next.push_back(y);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return std::nullopt;
    if (std::binary_search(next.begin(), next.end(), w)) return d;
    std::vector<Vertex> merged;
    merged.reserve(visited.size() + next.size());
    std::set_union(visited.begin(), visited.end(), next.begin(), next.end(),
                   std::back_inserter(merged));
    visited = std::move(merged);
    frontier = std::move(next);
  }
  return std::nullopt;
}

VertexSet bfsWithin(const PeriodicGraph& graph, const VertexSet& sources, int h) {
  std::vector<Vertex> visited(sources.begin(), sources.end());
  std::vector<Vertex> frontier = visited;
  for (int d = 1; d <= h; ++d) {
    std::vector<Vertex> next;
    for (const Vertex& x : frontier) {
      for (const Vertex& y : graph.neighbors(x)) {
        if (!std::binary_search(visited.begin(), visited.end(), y)) next.push_back(y);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) break;
    std::vector<Vertex> merged;
    merged.reserve(visited.size() + next.size());
    std::set_union(visited.begin(), visited.end(), next.begin(), next.end(),
                   std::back_inserter(merged));
    visited = std::move(merged);
    frontier = std::move(next);
  }
  return VertexSet(std::move(visited));
}

}  // namespace idslab
