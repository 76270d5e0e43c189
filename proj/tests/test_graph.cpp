#include "doctest.h"

#include <random>

#include "idslab/graph.hpp"

using namespace idslab;

namespace {

GroupElement lat(const GroupSpec& spec, std::int64_t a, std::int64_t b = 0,
                 std::int64_t c = 0) {
  GroupElement g = spec.identity();
  g.c = {a, b, c};
  return g;
}

GroupElement randomWord(const GroupSpec& spec, std::mt19937_64& rng, int len) {
  GroupElement g = spec.identity();
  const auto& gens = spec.generators();
  for (int i = 0; i < len; ++i) g = multiply(g, gens[rng() % gens.size()]);
  return g;
}

// Two-fiber ladder over Z^1: rungs inside the cell, rails along e1.
PeriodicGraph ladder() {
  GroupSpec z1 = GroupSpec::integerLattice(1);
  GroupElement e1 = lat(z1, 1);
  std::vector<PeriodicGraph::InterEdge> inter{{e1, 0, 0}, {e1, 1, 1}};
  return PeriodicGraph(std::move(z1), 2, {{0, 1}}, inter);
}

}  // namespace

TEST_CASE("Cayley graph degrees") {
  PeriodicGraph line = PeriodicGraph::cayley(GroupSpec::integerLattice(1));
  PeriodicGraph plane = PeriodicGraph::cayley(GroupSpec::integerLattice(2));
  PeriodicGraph heis = PeriodicGraph::cayley(GroupSpec::heisenberg());
  Vertex o{line.group().identity(), 0};
  CHECK(line.degree(o) == 2);
  CHECK(line.maxDegree() == 2);
  CHECK(plane.degree({plane.group().identity(), 0}) == 4);
  CHECK(heis.degree({heis.group().identity(), 0}) == 4);

  auto nb = line.neighbors(o);
  REQUIRE(nb.size() == 2);
  CHECK(nb[0].g == lat(line.group(), -1));
  CHECK(nb[1].g == lat(line.group(), 1));
}

TEST_CASE("neighbors are sorted, deduplicated and symmetric") {
  PeriodicGraph g = ladder();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Vertex v{randomWord(g.group(), rng, 6), static_cast<int>(rng() % 2)};
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (const Vertex& w : nb) {
      CHECK(g.hasEdge(v, w));
      CHECK(g.hasEdge(w, v));
    }
  }
}

TEST_CASE("adjacency is equivariant under left translation") {
  for (PeriodicGraph g : {PeriodicGraph::cayley(GroupSpec::heisenberg()), ladder()}) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      Vertex v{randomWord(g.group(), rng, 5), static_cast<int>(rng() % g.fiberSize())};
      GroupElement gamma = randomWord(g.group(), rng, 5);
      for (const Vertex& w : g.neighbors(v)) {
        CHECK(g.hasEdge({multiply(gamma, v.g), v.fiber}, {multiply(gamma, w.g), w.fiber}));
      }
    }
  }
}

TEST_CASE("ladder structure") {
  PeriodicGraph g = ladder();
  Vertex bottom{g.group().identity(), 0};
  Vertex top{g.group().identity(), 1};
  CHECK(g.degree(bottom) == 3);
  CHECK(g.hasEdge(bottom, top));
  CHECK(g.hasEdge(bottom, {lat(g.group(), 1), 0}));
  CHECK_FALSE(g.hasEdge(bottom, {lat(g.group(), 1), 1}));
}

TEST_CASE("graph distance equals the word metric on Cayley graphs") {
  for (GroupSpec spec : {GroupSpec::integerLattice(2), GroupSpec::heisenberg()}) {
    PeriodicGraph g = PeriodicGraph::cayley(spec);
    Vertex origin{spec.identity(), 0};
    for (const GroupElement& x : spec.ball(4)) {
      int wordNorm = 0;
      while (!std::binary_search(spec.ball(wordNorm).begin(),
                                 spec.ball(wordNorm).end(), x)) {
        ++wordNorm;
      }
      auto d = graphDistance(g, origin, {x, 0});
      REQUIRE(d.has_value());
      CHECK(*d == wordNorm);
    }
  }
}

TEST_CASE("graph distance basics") {
  PeriodicGraph line = PeriodicGraph::cayley(GroupSpec::integerLattice(1));
  Vertex o{line.group().identity(), 0};
  CHECK(graphDistance(line, o, o) == 0);
  CHECK(graphDistance(line, o, {lat(line.group(), 5), 0}) == 5);
  CHECK(graphDistance(line, o, {lat(line.group(), 40), 0}, 10) == std::nullopt);
}

TEST_CASE("disconnected fibers are reported as unreachable") {
  GroupSpec z1 = GroupSpec::integerLattice(1);
  GroupElement e1 = lat(z1, 1);
  // Two parallel lines without rungs.
  PeriodicGraph g(std::move(z1), 2, {}, {{e1, 0, 0}, {e1, 1, 1}});
  CHECK(graphDistance(g, {g.group().identity(), 0}, {g.group().identity(), 1}, 32) ==
        std::nullopt);
}

TEST_CASE("VertexSet algebra") {
  GroupSpec z1 = GroupSpec::integerLattice(1);
  auto mk = [&](std::initializer_list<int> xs) {
    std::vector<Vertex> v;
    for (int x : xs) v.push_back({lat(z1, x), 0});
    return VertexSet(v);
  };
  VertexSet a = mk({0, 1, 2});
  VertexSet b = mk({2, 3});
  CHECK(a.unionWith(b) == mk({0, 1, 2, 3}));
  CHECK(a.differenceWith(b) == mk({0, 1}));
  CHECK(a.symmetricDifference(b) == mk({0, 1, 3}));
  CHECK(a.intersectWith(b) == mk({2}));
  CHECK(mk({1, 2}).isSubsetOf(a));
  CHECK_FALSE(b.isSubsetOf(a));
  CHECK(VertexSet(std::vector<Vertex>{{lat(z1, 1), 0}, {lat(z1, 1), 0}}).size() == 1);
}

TEST_CASE("phi expands index sets fiberwise") {
  PeriodicGraph g = ladder();
  const auto& ball = g.group().ball(3);
  VertexSet lifted = phi(ball, g);
  CHECK(lifted.size() == ball.size() * 2);
  for (const GroupElement& x : ball) {
    CHECK(lifted.contains({x, 0}));
    CHECK(lifted.contains({x, 1}));
  }
  // phi commutes with unions
  VertexSet a = phi(g.group().ball(1), g);
  CHECK(a.unionWith(lifted) == lifted);
  CHECK_THROWS_AS(phi({}, g), std::invalid_argument);
}

TEST_CASE("bfsWithin computes metric collars") {
  PeriodicGraph plane = PeriodicGraph::cayley(GroupSpec::integerLattice(2));
  VertexSet origin(std::vector<Vertex>{{plane.group().identity(), 0}});
  for (int h = 0; h <= 5; ++h) {
    VertexSet collar = bfsWithin(plane, origin, h);
    CHECK(collar.size() == plane.group().ball(h).size());
  }
}

TEST_CASE("graph validation rejects bad patterns") {
  GroupSpec z1 = GroupSpec::integerLattice(1);
  CHECK_THROWS_AS(PeriodicGraph(z1, 0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGraph(z1, 2, {{0, 2}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGraph(z1, 1, {{0, 0}}, {}), std::invalid_argument);
  GroupElement e1 = lat(z1, 1);
  CHECK_THROWS_AS(PeriodicGraph(z1, 1, {}, {{e1, 0, 1}}), std::invalid_argument);
}
