#include "idslab/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace idslab {

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  if (g.family != h.family || g.dim != h.dim) {
    throw std::invalid_argument("multiply: mixed-family group elements");
  }
  GroupElement out = g;
  if (g.family == GroupFamily::IntegerLattice) {
    for (int i = 0; i < g.dim; ++i) out.c[i] = g.c[i] + h.c[i];
  } else {
    out.c[0] = g.c[0] + h.c[0];
    out.c[1] = g.c[1] + h.c[1];
    out.c[2] = g.c[2] + h.c[2] + g.c[0] * h.c[1];
  }
  return out;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out = g;
  if (g.family == GroupFamily::IntegerLattice) {
    for (int i = 0; i < g.dim; ++i) out.c[i] = -g.c[i];
  } else {
    // (a,b,c)^{-1} = (-a,-b,-c+ab)
    out.c[0] = -g.c[0];
    out.c[1] = -g.c[1];
    out.c[2] = -g.c[2] + g.c[0] * g.c[1];
  }
  return out;
}

bool isIdentity(const GroupElement& g) {
  return g.c[0] == 0 && g.c[1] == 0 && g.c[2] == 0;
}

GroupSpec::GroupSpec(GroupFamily family, int dim,
                     std::vector<GroupElement> gens, int maxBallRadius)
    : family_(family),
      dim_(dim),
      generators_(std::move(gens)),
      maxBallRadius_(maxBallRadius),
      cache_(std::make_shared<BallCache>()) {}

GroupSpec GroupSpec::integerLattice(int d, int maxBallRadius) {
  if (d < 1 || d > 3) throw std::invalid_argument("integerLattice: d must be in [1,3]");
  std::vector<GroupElement> gens;
  GroupElement e;
  e.family = GroupFamily::IntegerLattice;
  e.dim = static_cast<std::int8_t>(d);
  gens.push_back(e);
  for (int i = 0; i < d; ++i) {
    GroupElement plus = e, minus = e;
    plus.c[i] = 1;
    minus.c[i] = -1;
    gens.push_back(plus);
    gens.push_back(minus);
  }
  std::sort(gens.begin(), gens.end());
  return GroupSpec(GroupFamily::IntegerLattice, d, std::move(gens), maxBallRadius);
}

GroupSpec GroupSpec::heisenberg(int maxBallRadius) {
  std::vector<GroupElement> gens;
  GroupElement e;
  e.family = GroupFamily::Heisenberg3;
  e.dim = 3;
  gens.push_back(e);
  for (int i = 0; i < 2; ++i) {
    GroupElement g = e;
    g.c[i] = 1;
    gens.push_back(g);
    gens.push_back(inverse(g));
  }
  std::sort(gens.begin(), gens.end());
  return GroupSpec(GroupFamily::Heisenberg3, 3, std::move(gens), maxBallRadius);
}

GroupElement GroupSpec::identity() const {
  GroupElement e;
  e.family = family_;
  e.dim = static_cast<std::int8_t>(dim_);
  return e;
}

const std::vector<GroupElement>& GroupSpec::ball(int r) const {
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  if (r > maxBallRadius_) throw std::invalid_argument("ball: radius exceeds configured maximum");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& cache = cache_->byRadius;
  if (cache.empty()) cache.push_back({identity()});
  while (static_cast<int>(cache.size()) <= r) {
    const std::vector<GroupElement>& all = cache.back();
    // Frontier = outermost shell; one BFS layer per radius increment.
    std::vector<GroupElement> frontier;
    if (cache.size() == 1) {
      frontier = all;
    } else {
      const std::vector<GroupElement>& prev = cache[cache.size() - 2];
      std::set_difference(all.begin(), all.end(), prev.begin(), prev.end(),
                          std::back_inserter(frontier));
    }
    std::vector<GroupElement> candidates;
    candidates.reserve(frontier.size() * generators_.size());
    for (const GroupElement& g : frontier) {
      for (const GroupElement& s : generators_) {
        if (isIdentity(s)) continue;
        candidates.push_back(multiply(g, s));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    std::vector<GroupElement> next;
    next.reserve(all.size() + candidates.size());
    std::set_union(all.begin(), all.end(), candidates.begin(), candidates.end(),
                   std::back_inserter(next));
    cache.push_back(std::move(next));
  }
  return cache[r];
}

}  // namespace idslab
