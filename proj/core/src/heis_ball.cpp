#include "idslab/heis_ball.hpp"

#include <algorithm>
#include <stdexcept>

namespace idslab {

namespace {

using Interval = HeisenbergColumnSet::Interval;

void normalize(std::vector<Interval>& v) {
  if (v.empty()) return;
  std::sort(v.begin(), v.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  out.push_back(v.front());
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].lo <= out.back().hi + 1) {
      out.back().hi = std::max(out.back().hi, v[i].hi);
    } else {
      out.push_back(v[i]);
    }
  }
  v = std::move(out);
}

std::vector<Interval> intersectLists(const std::vector<Interval>& a,
                                     const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t lo = std::max(a[i].lo, b[j].lo);
    const std::int64_t hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

std::vector<Interval> differenceLists(const std::vector<Interval>& a,
                                      const std::vector<Interval>& b) {
  std::vector<Interval> out;
  std::size_t j = 0;
  for (const Interval& seg : a) {
    std::int64_t cur = seg.lo;
    while (j < b.size() && b[j].hi < seg.lo) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].lo <= seg.hi) {
      if (b[k].lo > cur) out.push_back({cur, b[k].lo - 1});
      cur = std::max(cur, b[k].hi + 1);
      ++k;
    }
    if (cur <= seg.hi) out.push_back({cur, seg.hi});
  }
  return out;
}

long long listSize(const std::vector<Interval>& v) {
  long long s = 0;
  for (const Interval& seg : v) s += seg.hi - seg.lo + 1;
  return s;
}

GroupElement heis(std::int64_t a, std::int64_t b, std::int64_t c) {
  GroupElement g;
  g.family = GroupFamily::Heisenberg3;
  g.dim = 3;
  g.c = {a, b, c};
  return g;
}

}  // namespace

HeisenbergColumnSet HeisenbergColumnSet::withBounds(std::int64_t aMin,
                                                    std::int64_t aMax,
                                                    std::int64_t bMin,
                                                    std::int64_t bMax) {
  HeisenbergColumnSet s;
  s.aMin_ = aMin;
  s.aMax_ = aMax;
  s.bMin_ = bMin;
  s.bMax_ = bMax;
  if (aMax >= aMin && bMax >= bMin) {
    s.columns_.resize(static_cast<std::size_t>(aMax - aMin + 1) *
                      static_cast<std::size_t>(bMax - bMin + 1));
  }
  return s;
}

const std::vector<Interval>* HeisenbergColumnSet::column(std::int64_t a,
                                                         std::int64_t b) const {
  if (a < aMin_ || a > aMax_ || b < bMin_ || b > bMax_) return nullptr;
  const std::vector<Interval>& col =
      columns_[static_cast<std::size_t>(a - aMin_) *
                   static_cast<std::size_t>(bMax_ - bMin_ + 1) +
               static_cast<std::size_t>(b - bMin_)];
  return col.empty() ? nullptr : &col;
}

std::vector<Interval>& HeisenbergColumnSet::columnRef(std::int64_t a, std::int64_t b) {
  return columns_[static_cast<std::size_t>(a - aMin_) *
                      static_cast<std::size_t>(bMax_ - bMin_ + 1) +
                  static_cast<std::size_t>(b - bMin_)];
}

void HeisenbergColumnSet::trim() {
  std::int64_t aLo = aMax_ + 1, aHi = aMin_ - 1, bLo = bMax_ + 1, bHi = bMin_ - 1;
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      if (column(a, b)) {
        aLo = std::min(aLo, a);
        aHi = std::max(aHi, a);
        bLo = std::min(bLo, b);
        bHi = std::max(bHi, b);
      }
    }
  }
  if (aLo > aHi) {
    *this = HeisenbergColumnSet();
    return;
  }
  if (aLo == aMin_ && aHi == aMax_ && bLo == bMin_ && bHi == bMax_) return;
  HeisenbergColumnSet shrunk = withBounds(aLo, aHi, bLo, bHi);
  for (std::int64_t a = aLo; a <= aHi; ++a) {
    for (std::int64_t b = bLo; b <= bHi; ++b) {
      if (const auto* col = column(a, b)) shrunk.columnRef(a, b) = *col;
    }
  }
  *this = std::move(shrunk);
}

HeisenbergColumnSet HeisenbergColumnSet::ball(int r) {
  if (r < 0) throw std::invalid_argument("HeisenbergColumnSet::ball: negative radius");
  HeisenbergColumnSet s = withBounds(0, 0, 0, 0);
  s.columnRef(0, 0) = {{0, 0}};
  for (int step = 0; step < r; ++step) s = s.dilate();
  return s;
}

long long HeisenbergColumnSet::size() const {
  long long total = 0;
  for (const auto& col : columns_) total += listSize(col);
  return total;
}

bool HeisenbergColumnSet::contains(const GroupElement& g) const {
  if (g.family != GroupFamily::Heisenberg3) {
    throw std::invalid_argument("HeisenbergColumnSet: wrong family");
  }
  const auto* col = column(g.c[0], g.c[1]);
  if (!col) return false;
  for (const Interval& seg : *col) {
    if (g.c[2] >= seg.lo && g.c[2] <= seg.hi) return true;
  }
  return false;
}

HeisenbergColumnSet HeisenbergColumnSet::translate(const GroupElement& gamma) const {
  if (gamma.family != GroupFamily::Heisenberg3) {
    throw std::invalid_argument("HeisenbergColumnSet: wrong family");
  }
  if (columns_.empty()) return {};
  const std::int64_t alpha = gamma.c[0], beta = gamma.c[1], delta = gamma.c[2];
  HeisenbergColumnSet out =
      withBounds(aMin_ + alpha, aMax_ + alpha, bMin_ + beta, bMax_ + beta);
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      const auto* col = column(a, b);
      if (!col) continue;
      // (a, b, c) gamma = (a + alpha, b + beta, c + delta + a beta)
      const std::int64_t shiftBy = delta + a * beta;
      std::vector<Interval> shifted = *col;
      for (Interval& seg : shifted) {
        seg.lo += shiftBy;
        seg.hi += shiftBy;
      }
      out.columnRef(a + alpha, b + beta) = std::move(shifted);
    }
  }
  return out;
}

HeisenbergColumnSet HeisenbergColumnSet::dilate() const {
  if (columns_.empty()) return {};
  HeisenbergColumnSet out = withBounds(aMin_ - 1, aMax_ + 1, bMin_ - 1, bMax_ + 1);
  std::vector<Interval> scratch;
  for (std::int64_t a = out.aMin_; a <= out.aMax_; ++a) {
    for (std::int64_t b = out.bMin_; b <= out.bMax_; ++b) {
      scratch.clear();
      if (const auto* col = column(a, b)) {
        scratch.insert(scratch.end(), col->begin(), col->end());
      }
      if (const auto* col = column(a - 1, b)) {  // image under (1,0,0)
        scratch.insert(scratch.end(), col->begin(), col->end());
      }
      if (const auto* col = column(a + 1, b)) {  // image under (-1,0,0)
        scratch.insert(scratch.end(), col->begin(), col->end());
      }
      if (const auto* col = column(a, b - 1)) {  // image under (0,1,0): shift +a
        for (const Interval& seg : *col) scratch.push_back({seg.lo + a, seg.hi + a});
      }
      if (const auto* col = column(a, b + 1)) {  // image under (0,-1,0): shift -a
        for (const Interval& seg : *col) scratch.push_back({seg.lo - a, seg.hi - a});
      }
      if (scratch.empty()) continue;
      normalize(scratch);
      out.columnRef(a, b) = scratch;
    }
  }
  return out;
}

HeisenbergColumnSet HeisenbergColumnSet::erode() const {
  if (columns_.empty()) return {};
  HeisenbergColumnSet out = withBounds(aMin_, aMax_, bMin_, bMax_);
  static const std::vector<Interval> kEmpty;
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      const auto* self = column(a, b);
      if (!self) continue;
      // x stays iff every neighbor x s is a member, i.e. x lies in the
      // intersection of the four generator images of the set.
      std::vector<Interval> acc = *self;
      auto clip = [&](const std::vector<Interval>* src, std::int64_t shiftBy) {
        if (!src) {
          acc.clear();
          return;
        }
        std::vector<Interval> shifted = *src;
        for (Interval& seg : shifted) {
          seg.lo += shiftBy;
          seg.hi += shiftBy;
        }
        acc = intersectLists(acc, shifted);
      };
      clip(column(a - 1, b), 0);
      if (!acc.empty()) clip(column(a + 1, b), 0);
      if (!acc.empty()) clip(column(a, b - 1), a);
      if (!acc.empty()) clip(column(a, b + 1), -a);
      if (!acc.empty()) out.columnRef(a, b) = std::move(acc);
    }
  }
  out.trim();
  return out;
}

HeisenbergColumnSet HeisenbergColumnSet::unionWith(const HeisenbergColumnSet& other) const {
  if (columns_.empty()) return other;
  if (other.columns_.empty()) return *this;
  HeisenbergColumnSet out =
      withBounds(std::min(aMin_, other.aMin_), std::max(aMax_, other.aMax_),
                 std::min(bMin_, other.bMin_), std::max(bMax_, other.bMax_));
  for (std::int64_t a = out.aMin_; a <= out.aMax_; ++a) {
    for (std::int64_t b = out.bMin_; b <= out.bMax_; ++b) {
      std::vector<Interval> merged;
      if (const auto* col = column(a, b)) {
        merged.insert(merged.end(), col->begin(), col->end());
      }
      if (const auto* col = other.column(a, b)) {
        merged.insert(merged.end(), col->begin(), col->end());
      }
      if (merged.empty()) continue;
      normalize(merged);
      out.columnRef(a, b) = std::move(merged);
    }
  }
  return out;
}

HeisenbergColumnSet HeisenbergColumnSet::intersectWith(
    const HeisenbergColumnSet& other) const {
  if (columns_.empty() || other.columns_.empty()) return {};
  HeisenbergColumnSet out =
      withBounds(std::max(aMin_, other.aMin_), std::min(aMax_, other.aMax_),
                 std::max(bMin_, other.bMin_), std::min(bMax_, other.bMax_));
  if (out.columns_.empty()) return {};
  for (std::int64_t a = out.aMin_; a <= out.aMax_; ++a) {
    for (std::int64_t b = out.bMin_; b <= out.bMax_; ++b) {
      const auto* mine = column(a, b);
      const auto* theirs = other.column(a, b);
      if (!mine || !theirs) continue;
      std::vector<Interval> both = intersectLists(*mine, *theirs);
      if (!both.empty()) out.columnRef(a, b) = std::move(both);
    }
  }
  out.trim();
  return out;
}

HeisenbergColumnSet HeisenbergColumnSet::differenceWith(
    const HeisenbergColumnSet& other) const {
  if (columns_.empty()) return {};
  HeisenbergColumnSet out = withBounds(aMin_, aMax_, bMin_, bMax_);
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      const auto* mine = column(a, b);
      if (!mine) continue;
      std::vector<Interval> rest;
      if (const auto* theirs = other.column(a, b)) {
        rest = differenceLists(*mine, *theirs);
      } else {
        rest = *mine;
      }
      if (!rest.empty()) out.columnRef(a, b) = std::move(rest);
    }
  }
  out.trim();
  return out;
}

long long HeisenbergColumnSet::symmetricDifferenceSize(
    const HeisenbergColumnSet& other) const {
  long long intersection = 0;
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      const auto* mine = column(a, b);
      const auto* theirs = other.column(a, b);
      if (!mine || !theirs) continue;
      intersection += listSize(intersectLists(*mine, *theirs));
    }
  }
  return size() + other.size() - 2 * intersection;
}

HeisenbergColumnSet HeisenbergColumnSet::thickenedBoundary(int d) const {
  if (d < 0) throw std::invalid_argument("thickenedBoundary: negative d");
  HeisenbergColumnSet bd = dilate().differenceWith(erode());
  for (int i = 0; i < d; ++i) bd = bd.dilate();
  return bd;
}

std::vector<GroupElement> HeisenbergColumnSet::enumerate() const {
  std::vector<GroupElement> out;
  for (std::int64_t a = aMin_; a <= aMax_; ++a) {
    for (std::int64_t b = bMin_; b <= bMax_; ++b) {
      const auto* col = column(a, b);
      if (!col) continue;
      for (const Interval& seg : *col) {
        for (std::int64_t c = seg.lo; c <= seg.hi; ++c) out.push_back(heis(a, b, c));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational heisenbergBallDefect(int r, const GroupElement& s) {
  HeisenbergColumnSet ball = HeisenbergColumnSet::ball(r);
  return Rational(ball.symmetricDifferenceSize(ball.translate(s)), ball.size());
}

Rational heisenbergDoublingQuotient(int rCurrent, int rNext) {
  if (rCurrent < 0 || rNext < 0) {
    throw std::invalid_argument("heisenbergDoublingQuotient: negative radius");
  }
  // E^a E^b = E^{a+b} and (E^r)^{-1} = E^r for the symmetric generators.
  long long product = HeisenbergColumnSet::ball(rCurrent + rNext).size();
  long long volume = HeisenbergColumnSet::ball(rNext).size();
  return Rational(product, volume);
}

Rational heisenbergIsoperimetricQuotient(int r, int d) {
  HeisenbergColumnSet ball = HeisenbergColumnSet::ball(r);
  return Rational(ball.thickenedBoundary(d).size(), ball.size());
}

std::vector<int> selectRadiiHeisenberg(int maxRadius, int dMax, double epsilon) {
  if (maxRadius < dMax || dMax < 1) {
    throw std::invalid_argument("selectRadiiHeisenberg: need maxRadius >= dMax >= 1");
  }
  if (epsilon <= 0) throw std::invalid_argument("selectRadiiHeisenberg: epsilon must be > 0");
  std::vector<long long> sizes;
  HeisenbergColumnSet s = HeisenbergColumnSet::ball(0);
  sizes.push_back(s.size());
  for (int r = 1; r <= maxRadius + dMax; ++r) {
    s = s.dilate();
    sizes.push_back(s.size());
  }
  std::vector<int> out;
  for (int r = dMax; r <= maxRadius; ++r) {
    const double volume = static_cast<double>(sizes[r]);
    bool ok = true;
    for (int d = 1; d <= dMax; ++d) {
      const double shell =
          static_cast<double>(sizes[r + d]) - static_cast<double>(sizes[r - d]);
      if (shell / volume > epsilon) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(r);
  }
  return out;
}

}  // namespace idslab
