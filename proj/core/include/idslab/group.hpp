#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

namespace idslab {

enum class GroupFamily { IntegerLattice, Heisenberg3 };

/// Element of Z^d (d <= 3) or of the discrete Heisenberg group H3(Z).
/// Coordinates are fixed-width integers; the default comparison is
/// lexicographic, so element sets can live in sorted vectors with a
/// deterministic iteration order.
struct GroupElement {
  GroupFamily family = GroupFamily::IntegerLattice;
  std::int8_t dim = 1;  // number of meaningful coordinates
  std::array<std::int64_t, 3> c{0, 0, 0};

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Group product. Z^d: componentwise addition.
/// Heisenberg: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
/// Throws std::invalid_argument on mixed-family operands.
GroupElement multiply(const GroupElement& g, const GroupElement& h);

GroupElement inverse(const GroupElement& g);

bool isIdentity(const GroupElement& g);

/// A finitely generated amenable group together with its generating set E
/// (always containing e and closed under inversion).  Combinatorial balls
/// E^r are computed by BFS and memoized; the cache is shared between
/// copies of the spec and internally synchronized.
class GroupSpec {
 public:
  static GroupSpec integerLattice(int d, int maxBallRadius = 4096);
  static GroupSpec heisenberg(int maxBallRadius = 512);

  GroupFamily family() const { return family_; }
  int dim() const { return dim_; }
  GroupElement identity() const;
  const std::vector<GroupElement>& generators() const { return generators_; }
  int maxBallRadius() const { return maxBallRadius_; }

  /// Combinatorial ball E^r: all products of at most r generators,
  /// returned as a sorted set.  r = 0 gives {e}.  Throws if r exceeds
  /// the configured maximum radius or is negative.
  const std::vector<GroupElement>& ball(int r) const;

 private:
  GroupSpec(GroupFamily family, int dim, std::vector<GroupElement> gens,
            int maxBallRadius);

  struct BallCache {
    std::mutex mutex;
    // deque: growing the cache must not invalidate handed-out references
    std::deque<std::vector<GroupElement>> byRadius;
  };

  GroupFamily family_;
  int dim_;
  std::vector<GroupElement> generators_;
  int maxBallRadius_;
  std::shared_ptr<BallCache> cache_;
};

}  // namespace idslab
