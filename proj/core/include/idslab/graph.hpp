#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <vector>

#include "idslab/group.hpp"

namespace idslab {

/// Vertex of the periodic graph: a group element together with a fiber
/// (cell) index inside the fundamental domain.
struct Vertex {
  GroupElement g;
  int fiber = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// Gamma-periodic graph on the vertex set Gamma x F, |F| = fiberSize.
/// Edges are generated equivariantly from a finite pattern:
///   intra edge (i,j):       (g,i) -- (g,j)  for every g
///   inter edge (s,i,j):     (g,i) -- (gs,j) for every g
/// A pure Cayley graph is the fiberSize = 1 case with one inter edge per
/// non-identity generator.
class PeriodicGraph {
 public:
  struct InterEdge {
    GroupElement generator;
    int fromFiber = 0;
    int toFiber = 0;
  };

  PeriodicGraph(GroupSpec spec, int fiberSize,
                std::vector<std::pair<int, int>> intraEdges,
                std::vector<InterEdge> interEdges);

  /// Cayley graph of the group: single-cell fiber, one edge orbit per
  /// non-identity generator.
  static PeriodicGraph cayley(GroupSpec spec);

  const GroupSpec& group() const { return spec_; }
  int fiberSize() const { return fiberSize_; }

  /// Deduplicated, sorted adjacency of v in the infinite graph.
  std::vector<Vertex> neighbors(const Vertex& v) const;

  int degree(const Vertex& v) const;
  int maxDegree() const;

  bool hasEdge(const Vertex& v, const Vertex& w) const;

 private:
  GroupSpec spec_;
  int fiberSize_;
  std::vector<std::pair<int, int>> intraEdges_;
  std::vector<InterEdge> interEdges_;
};

/// Finite set of vertices kept sorted and deduplicated; |D| is the size
/// used in every normalization.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> vertices);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  bool contains(const Vertex& v) const;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  VertexSet unionWith(const VertexSet& other) const;
  VertexSet differenceWith(const VertexSet& other) const;
  VertexSet symmetricDifference(const VertexSet& other) const;
  VertexSet intersectWith(const VertexSet& other) const;

  bool isSubsetOf(const VertexSet& other) const;

  /// Line-oriented debug format: "c0 c1 c2 fiberIndex" per vertex.
  void writeText(std::ostream& os) const;

 private:
  std::vector<Vertex> vertices_;
};

/// phi(I): the vertex set I x F induced by a finite group subset.
/// Throws on empty I.
VertexSet phi(const std::vector<GroupElement>& indexSet,
              const PeriodicGraph& graph);

/// BFS shortest-path length between two vertices; nullopt if w is not
/// reached within searchCap steps (covers genuinely disconnected pairs,
/// which on an infinite graph can only be decided up to a cap).
std::optional<int> graphDistance(const PeriodicGraph& graph, const Vertex& v,
                                 const Vertex& w, int searchCap = 512);

/// All vertices at BFS distance <= h from the source set.
VertexSet bfsWithin(const PeriodicGraph& graph, const VertexSet& sources,
                    int h);

}  // namespace idslab
