#pragma once

#include <cstdint>
#include <vector>

#include "idslab/folner.hpp"
#include "idslab/group.hpp"

namespace idslab {

/// Interval-compressed subset of the discrete Heisenberg group: per
/// column (a, b) the set of center coordinates c is a sorted list of
/// disjoint intervals.  Combinatorial balls have O(r^2) columns instead
/// of O(r^4) elements, which makes boundary and defect computations
/// feasible at the radii where the isoperimetric quotients actually
/// drop below interesting thresholds.
class HeisenbergColumnSet {
 public:
  struct Interval {
    std::int64_t lo = 0, hi = 0;  // inclusive
  };

  HeisenbergColumnSet() = default;

  /// E^r for the standard generating set, by r one-step dilations.
  static HeisenbergColumnSet ball(int r);

  long long size() const;
  bool empty() const { return size() == 0; }
  bool contains(const GroupElement& g) const;

  /// x -> x * gamma, applied to the whole set.
  HeisenbergColumnSet translate(const GroupElement& gamma) const;

  /// One BFS layer: union with the four generator translates.
  HeisenbergColumnSet dilate() const;

  /// All x in D whose neighbors all stay in D.
  HeisenbergColumnSet erode() const;

  /// Two-sided vertex boundary thickened by d BFS layers.
  HeisenbergColumnSet thickenedBoundary(int d) const;

  HeisenbergColumnSet unionWith(const HeisenbergColumnSet& other) const;
  HeisenbergColumnSet intersectWith(const HeisenbergColumnSet& other) const;
  HeisenbergColumnSet differenceWith(const HeisenbergColumnSet& other) const;

  long long symmetricDifferenceSize(const HeisenbergColumnSet& other) const;

  /// Explicit element list (sorted); only for cross-validation at
  /// small radii.
  std::vector<GroupElement> enumerate() const;

 private:
  // dense column grid over [aMin, aMax] x [bMin, bMax]
  std::int64_t aMin_ = 0, aMax_ = -1, bMin_ = 0, bMax_ = -1;
  std::vector<std::vector<Interval>> columns_;

  const std::vector<Interval>* column(std::int64_t a, std::int64_t b) const;
  std::vector<Interval>& columnRef(std::int64_t a, std::int64_t b);
  static HeisenbergColumnSet withBounds(std::int64_t aMin, std::int64_t aMax,
                                        std::int64_t bMin, std::int64_t bMax);
  void trim();
};

/// |E^r delta E^r s| / |E^r|, exact, via the column representation.
Rational heisenbergBallDefect(int r, const GroupElement& s);

/// |E^{rNext} (E^{rCurrent})^{-1}| / |E^{rNext}|.  Balls satisfy
/// E^a E^b = E^{a+b}, so this is |E^{rCurrent+rNext}| / |E^{rNext}|.
Rational heisenbergDoublingQuotient(int rCurrent, int rNext);

/// |bd_d(E^r)| / |E^r| on the Cayley graph, exact.
Rational heisenbergIsoperimetricQuotient(int r, int d);

/// Column-set analogue of selectRadii: radii whose shell quotients
/// (|E^{r+d}| - |E^{r-d}|) / |E^r| stay below epsilon for d <= dMax.
std::vector<int> selectRadiiHeisenberg(int maxRadius, int dMax, double epsilon);

}  // namespace idslab
