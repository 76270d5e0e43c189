#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "idslab/graph.hpp"
#include "idslab/group.hpp"

namespace idslab {

/// Exact nonnegative rational, reduced; all set quotients are reported
/// in exact arithmetic.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    long long g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

enum class FolnerProvenance { CombinatorialBalls, MetricBalls, UserSupplied };

/// Monotone increasing sequence of finite group subsets I_1 c I_2 c ...
/// Each index set is kept sorted.
struct FolnerSequence {
  std::vector<std::vector<GroupElement>> indexSets;
  FolnerProvenance provenance = FolnerProvenance::UserSupplied;
  std::vector<int> radii;  // set when provenance is CombinatorialBalls

  static FolnerSequence combinatorialBalls(const GroupSpec& spec,
                                           const std::vector<int>& radii);
  void validate() const;  // monotone increasing, non-empty
};

/// |I delta I.gamma| / |I|, exact.
Rational folnerDefect(const GroupSpec& spec,
                      const std::vector<GroupElement>& indexSet,
                      const GroupElement& gamma);

/// |I_next . I_n^{-1}| / |I_next|, exact (Shulman doubling quotient).
Rational temperednessQuotient(const GroupSpec& spec,
                              const std::vector<GroupElement>& current,
                              const std::vector<GroupElement>& next);

/// Increasing radii r in [dMax, maxRadius] with
/// (|E^{r+d}| - |E^{r-d}|) / |E^r| <= epsilon for all 1 <= d <= dMax.
/// May be empty when no radius qualifies.
std::vector<int> selectRadii(const GroupSpec& spec, int maxRadius, int dMax,
                             double epsilon);

struct TemperedExtraction {
  FolnerSequence sequence;
  bool truncated = false;       // no further set met the bound
  Rational achievedSup{0, 1};   // max consecutive quotient of the output
};

/// Greedy subsequence whose consecutive pairs satisfy the doubling
/// quotient <= C: keeps the first set, then repeatedly appends the
/// earliest later set meeting the bound against the last kept set.
TemperedExtraction extractTemperedSubsequence(const GroupSpec& spec,
                                              const FolnerSequence& seq,
                                              double C);

/// Two-sided vertex boundary thickened by h:
///   bd(D) = {x : x has a neighbor y with membership(x) != membership(y)}
///   bd_h(D) = {x : dist(x, bd(D)) <= h}.
VertexSet hBoundary(const PeriodicGraph& graph, const VertexSet& D, int h);

/// |bd_d(D)| / |D|, exact.
Rational isoperimetricQuotient(const PeriodicGraph& graph, const VertexSet& D,
                               int d);

/// Random h-approximation: toggles membership of vertices inside
/// bd_h(D) with the given probability; U delta V is contained in
/// bd_h(U) by construction.  Deterministic for a fixed seed.
VertexSet hApproximate(const PeriodicGraph& graph, const VertexSet& U, int h,
                       std::uint64_t seed, double toggleProbability);

enum class EquivalenceVerdict { CoDecay, CoStagnation, Mixed };

struct IsoperimetricRow {
  int n = 0;
  std::size_t indexSetSize = 0;
  std::vector<Rational> defects;    // one per non-identity generator
  std::vector<Rational> quotients;  // one per d in [0, dMax]
};

struct IsoperimetricReport {
  std::vector<IsoperimetricRow> rows;
  double threshold = 0.05;
  bool defectsDecayed = false;
  bool quotientsDecayed = false;
  EquivalenceVerdict verdict = EquivalenceVerdict::Mixed;
};

/// Per-n Folner defects (max over generators) and isoperimetric
/// quotients of phi(I_n) for d <= dMax, with a joint decay verdict at
/// the final index.
IsoperimetricReport checkFolnerIsoperimetricEquivalence(
    const PeriodicGraph& graph, const FolnerSequence& seq, int dMax,
    double threshold = 0.05);

}  // namespace idslab
