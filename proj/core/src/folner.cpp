#include "idslab/folner.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace idslab {

FolnerSequence FolnerSequence::combinatorialBalls(const GroupSpec& spec,
                                                  const std::vector<int>& radii) {
  FolnerSequence seq;
  seq.provenance = FolnerProvenance::CombinatorialBalls;
  seq.radii = radii;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (radii[i] >= radii[i + 1]) {
      throw std::invalid_argument("combinatorialBalls: radii must be strictly increasing");
    }
  }
  for (int r : radii) seq.indexSets.push_back(spec.ball(r));
  return seq;
}

void FolnerSequence::validate() const {
  if (indexSets.empty()) throw std::invalid_argument("FolnerSequence: empty");
  for (const auto& s : indexSets) {
    if (s.empty()) throw std::invalid_argument("FolnerSequence: empty index set");
    if (!std::is_sorted(s.begin(), s.end())) {
      throw std::invalid_argument("FolnerSequence: index set not sorted");
    }
  }
  for (std::size_t i = 0; i + 1 < indexSets.size(); ++i) {
    if (!std::includes(indexSets[i + 1].begin(), indexSets[i + 1].end(),
                       indexSets[i].begin(), indexSets[i].end())) {
      throw std::invalid_argument("FolnerSequence: not monotone increasing");
    }
  }
}

Rational folnerDefect(const GroupSpec& spec,
                      const std::vector<GroupElement>& indexSet,
                      const GroupElement& gamma) {
  if (indexSet.empty()) throw std::invalid_argument("folnerDefect: empty set");
  (void)spec;
  std::vector<GroupElement> translated;
  translated.reserve(indexSet.size());
  for (const GroupElement& g : indexSet) translated.push_back(multiply(g, gamma));
  std::sort(translated.begin(), translated.end());
  std::vector<GroupElement> symdiff;
  std::set_symmetric_difference(indexSet.begin(), indexSet.end(),
                                translated.begin(), translated.end(),
                                std::back_inserter(symdiff));
  return Rational(static_cast<long long>(symdiff.size()),
                  static_cast<long long>(indexSet.size()));
}

Rational temperednessQuotient(const GroupSpec& spec,
                              const std::vector<GroupElement>& current,
                              const std::vector<GroupElement>& next) {
  if (current.empty() || next.empty()) {
    throw std::invalid_argument("temperednessQuotient: empty set");
  }
  (void)spec;
  std::vector<GroupElement> inverses;
  inverses.reserve(current.size());
  for (const GroupElement& g : current) inverses.push_back(inverse(g));
  std::vector<GroupElement> products;
  products.reserve(next.size() * inverses.size());
  for (const GroupElement& a : next) {
    for (const GroupElement& b : inverses) products.push_back(multiply(a, b));
  }
  std::sort(products.begin(), products.end());
  products.erase(std::unique(products.begin(), products.end()), products.end());
  return Rational(static_cast<long long>(products.size()),
                  static_cast<long long>(next.size()));
}

std::vector<int> selectRadii(const GroupSpec& spec, int maxRadius, int dMax,
                             double epsilon) {
  if (maxRadius < dMax || dMax < 1) {
    throw std::invalid_argument("selectRadii: need maxRadius >= dMax >= 1");
  }
  if (epsilon <= 0) throw std::invalid_argument("selectRadii: epsilon must be > 0");
  std::vector<int> out;
  for (int r = dMax; r + dMax <= spec.maxBallRadius() && r <= maxRadius; ++r) {
    const double volume = static_cast<double>(spec.ball(r).size());
    bool ok = true;
    for (int d = 1; d <= dMax; ++d) {
      const double shell = static_cast<double>(spec.ball(r + d).size()) -
                           static_cast<double>(spec.ball(r - d).size());
      if (shell / volume > epsilon) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(r);
  }
  return out;
}

TemperedExtraction extractTemperedSubsequence(const GroupSpec& spec,
                                              const FolnerSequence& seq,
                                              double C) {
  if (C < 1.0) throw std::invalid_argument("extractTemperedSubsequence: C must be >= 1");
  seq.validate();
  TemperedExtraction out;
  out.sequence.provenance = seq.provenance;
  out.sequence.indexSets.push_back(seq.indexSets.front());
  if (!seq.radii.empty()) out.sequence.radii.push_back(seq.radii.front());
  std::size_t last = 0;
  while (true) {
    bool found = false;
    for (std::size_t j = last + 1; j < seq.indexSets.size(); ++j) {
      Rational q = temperednessQuotient(spec, seq.indexSets[last], seq.indexSets[j]);
      if (q.toDouble() <= C) {
        out.sequence.indexSets.push_back(seq.indexSets[j]);
        if (j < seq.radii.size()) out.sequence.radii.push_back(seq.radii[j]);
        if (out.achievedSup < q) out.achievedSup = q;
        last = j;
        found = true;
        break;
      }
    }
    if (!found) {
      out.truncated = last + 1 < seq.indexSets.size();
      break;
    }
  }
  return out;
}

VertexSet hBoundary(const PeriodicGraph& graph, const VertexSet& D, int h) {
  if (h < 0) throw std::invalid_argument("hBoundary: negative h");
  if (D.empty()) return VertexSet{};
  std::vector<Vertex> boundary;
  for (const Vertex& x : D) {
    bool cut = false;
    for (const Vertex& y : graph.neighbors(x)) {
      if (!D.contains(y)) {
        cut = true;
        boundary.push_back(y);  // outer side
      }
    }
    if (cut) boundary.push_back(x);  // inner side
  }
  VertexSet bd(std::move(boundary));
  if (h == 0) return bd;
  return bfsWithin(graph, bd, h);
}

Rational isoperimetricQuotient(const PeriodicGraph& graph, const VertexSet& D,
                               int d) {
  if (D.empty()) throw std::invalid_argument("isoperimetricQuotient: empty set");
  VertexSet bd = hBoundary(graph, D, d);
  return Rational(static_cast<long long>(bd.size()),
                  static_cast<long long>(D.size()));
}

VertexSet hApproximate(const PeriodicGraph& graph, const VertexSet& U, int h,
                       std::uint64_t seed, double toggleProbability) {
  if (h < 1) throw std::invalid_argument("hApproximate: h must be >= 1");
  VertexSet collar = hBoundary(graph, U, h);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vertex> result(U.begin(), U.end());
  for (const Vertex& x : collar) {  // sorted order: deterministic per seed
    if (unit(rng) >= toggleProbability) continue;
    auto it = std::lower_bound(result.begin(), result.end(), x);
    if (it != result.end() && *it == x) {
      result.erase(it);
    } else {
      result.insert(it, x);
    }
  }
  return VertexSet(std::move(result));
}

IsoperimetricReport checkFolnerIsoperimetricEquivalence(
    const PeriodicGraph& graph, const FolnerSequence& seq, int dMax,
    double threshold) {
  seq.validate();
  IsoperimetricReport report;
  report.threshold = threshold;
  const GroupSpec& spec = graph.group();
  for (std::size_t n = 0; n < seq.indexSets.size(); ++n) {
    IsoperimetricRow row;
    row.n = static_cast<int>(n);
    row.indexSetSize = seq.indexSets[n].size();
    for (const GroupElement& s : spec.generators()) {
      if (isIdentity(s)) continue;
      row.defects.push_back(folnerDefect(spec, seq.indexSets[n], s));
    }
    VertexSet A = phi(seq.indexSets[n], graph);
    for (int d = 0; d <= dMax; ++d) {
      row.quotients.push_back(isoperimetricQuotient(graph, A, d));
    }
    report.rows.push_back(std::move(row));
  }
  const IsoperimetricRow& tail = report.rows.back();
  double maxDefect = 0.0, maxQuot = 0.0;
  for (const Rational& r : tail.defects) maxDefect = std::max(maxDefect, r.toDouble());
  for (const Rational& r : tail.quotients) maxQuot = std::max(maxQuot, r.toDouble());
  report.defectsDecayed = maxDefect < threshold;
  report.quotientsDecayed = maxQuot < threshold;
  if (report.defectsDecayed && report.quotientsDecayed) {
    report.verdict = EquivalenceVerdict::CoDecay;
  } else if (!report.defectsDecayed && !report.quotientsDecayed) {
    report.verdict = EquivalenceVerdict::CoStagnation;
  } else {
    report.verdict = EquivalenceVerdict::Mixed;
  }
  return report;
}

}  // namespace idslab
