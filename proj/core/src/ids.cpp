#include "idslab/ids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "idslab/parallel.hpp"

namespace idslab {

AdmissibleSequence buildAdmissible(const PeriodicGraph& graph,
                                   const FolnerSequence& candidate,
                                   const AdmissibleParams& params) {
  candidate.validate();
  TemperedExtraction extraction =
      extractTemperedSubsequence(graph.group(), candidate, params.temperedC);
  if (extraction.sequence.indexSets.size() < 3) {
    throw std::runtime_error(
        "buildAdmissible: tempered extraction kept fewer than 3 sets; experiment too small");
  }
  AdmissibleSequence adm;
  adm.folner = std::move(extraction.sequence);
  adm.h = params.h;
  adm.achievedTemperedSup = extraction.achievedSup;
  for (std::size_t n = 0; n < adm.folner.indexSets.size(); ++n) {
    VertexSet A = phi(adm.folner.indexSets[n], graph);
    if (params.h == 0) {
      adm.domains.push_back(std::move(A));
      continue;
    }
    VertexSet D = hApproximate(graph, A, params.h,
                               params.approximationSeed + n,
                               params.toggleProbability);
    VertexSet collar = hBoundary(graph, A, params.h);
    if (!D.symmetricDifference(A).isSubsetOf(collar)) {
      throw std::logic_error("buildAdmissible: h-approximation containment violated");
    }
    adm.domains.push_back(std::move(D));
  }
  return adm;
}

std::vector<double> IDSEstimate::seedMean(std::size_t n) const {
  std::vector<double> mean(lambdaGrid.size(), 0.0);
  for (const auto& perSeed : values[n]) {
    for (std::size_t g = 0; g < mean.size(); ++g) mean[g] += perSeed[g];
  }
  for (double& m : mean) m /= static_cast<double>(values[n].size());
  return mean;
}

std::vector<double> LaplaceReport::seedMean(std::size_t n) const {
  std::vector<double> mean(tGrid.size(), 0.0);
  for (const auto& perSeed : values[n]) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += perSeed[k];
  }
  for (double& m : mean) m /= static_cast<double>(values[n].size());
  return mean;
}

IDSEstimate countingFunctions(const PeriodicGraph& graph,
                              const AdmissibleSequence& adm,
                              const std::vector<std::uint64_t>& seeds,
                              const SingleSitePotential& u,
                              const CouplingLaw& law,
                              const std::vector<double>& lambdaGrid,
                              int threads, int denseLimit) {
  if (seeds.empty()) throw std::invalid_argument("countingFunctions: no seeds");
  if (!std::is_sorted(lambdaGrid.begin(), lambdaGrid.end())) {
    throw std::invalid_argument("countingFunctions: lambda grid not sorted");
  }
  IDSEstimate out;
  out.lambdaGrid = lambdaGrid;
  out.seeds = seeds;
  const std::size_t N = adm.domains.size();
  const std::size_t S = seeds.size();
  out.values.assign(N, std::vector<std::vector<double>>(S));
  out.minEigenvalue.assign(N * S, 0.0);
  out.maxEigenvalue.assign(N * S, 0.0);
  out.largestNSpectra.assign(S, {});
  out.spectra.assign(N, std::vector<std::vector<double>>(S));

  parallelFor(N * S, threads, [&](std::size_t task) {
    const std::size_t n = task / S;
    const std::size_t s = task % S;
    EnvironmentSample omega = EnvironmentSample::fresh(seeds[s], law, graph.group());
    DirichletMatrix M = assembleDirichlet(graph, adm.domains[n], omega, u, denseLimit);
    Spectrum spec;
    try {
      spec = eigenvalues(M, false);
    } catch (const SolverError& err) {
      throw std::runtime_error("countingFunctions: solver failure at (n=" +
                               std::to_string(n) + ", seed=" +
                               std::to_string(seeds[s]) + "), eigenvalue index " +
                               std::to_string(err.eigenvalueIndex));
    }
    const double volume = static_cast<double>(adm.domains[n].size());
    std::vector<double> row(lambdaGrid.size());
    for (std::size_t g = 0; g < lambdaGrid.size(); ++g) {
      row[g] = countBelow(spec, lambdaGrid[g], volume).normalized;
    }
    out.values[n][s] = std::move(row);
    out.minEigenvalue[task] = spec.eigenvalues.front();
    out.maxEigenvalue[task] = spec.eigenvalues.back();
    if (n + 1 == N) out.largestNSpectra[s] = spec.eigenvalues;
    out.spectra[n][s] = std::move(spec.eigenvalues);
  });

  out.limit = out.seedMean(N - 1);
  out.cauchyGap.assign(N, 0.0);
  for (std::size_t n = 1; n < N; ++n) {
    std::vector<double> prev = out.seedMean(n - 1);
    std::vector<double> cur = out.seedMean(n);
    double gap = 0.0;
    for (std::size_t g = 0; g < cur.size(); ++g) {
      gap = std::max(gap, std::abs(cur[g] - prev[g]));
    }
    out.cauchyGap[n] = gap;
  }
  return out;
}

std::vector<double> paddedKernelDiagonals(const PeriodicGraph& graph,
                                          const EnvironmentSample& omega,
                                          const SingleSitePotential& u,
                                          double t, const VertexSet& targets,
                                          int pad, int denseLimit) {
  VertexSet window = bfsWithin(graph, targets, pad);
  DirichletMatrix M = assembleDirichlet(graph, window, omega, u, denseLimit);
  Spectrum spec = eigenvalues(M, true);
  const auto& verts = window.vertices();
  std::vector<double> out;
  out.reserve(targets.size());
  for (const Vertex& x : targets) {
    auto it = std::lower_bound(verts.begin(), verts.end(), x);
    out.push_back(heatKernelDiagonal(spec, t, static_cast<int>(it - verts.begin())));
  }
  return out;
}

LaplaceReport laplacePipeline(const PeriodicGraph& graph,
                              const AdmissibleSequence& adm,
                              const std::vector<std::uint64_t>& seeds,
                              const SingleSitePotential& u,
                              const CouplingLaw& law,
                              const std::vector<double>& tGrid,
                              const LaplaceParams& params) {
  if (seeds.empty()) throw std::invalid_argument("laplacePipeline: no seeds");
  for (double t : tGrid) {
    if (t <= 0.0) throw std::invalid_argument("laplacePipeline: t grid must be positive");
  }
  LaplaceReport out;
  out.tGrid = tGrid;
  out.seeds = seeds;
  const std::size_t N = adm.domains.size();
  const std::size_t S = seeds.size();
  out.values.assign(N, std::vector<std::vector<double>>(S));
  std::vector<double> identityGaps(N * S, 0.0);

  parallelFor(N * S, params.threads, [&](std::size_t task) {
    const std::size_t n = task / S;
    const std::size_t s = task % S;
    EnvironmentSample omega = EnvironmentSample::fresh(seeds[s], law, graph.group());
    DirichletMatrix M =
        assembleDirichlet(graph, adm.domains[n], omega, u, params.denseLimit);
    Spectrum spec = eigenvalues(M, false);
    const double volume = static_cast<double>(adm.domains[n].size());
    DistributionFunction N_fn = DistributionFunction::fromSpectrum(spec, volume);
    std::vector<double> row(tGrid.size());
    double gap = 0.0;
    for (std::size_t k = 0; k < tGrid.size(); ++k) {
      const double trace = heatTrace(spec, tGrid[k], volume);
      const double stieltjes = N_fn.laplace(tGrid[k]);
      gap = std::max(gap, std::abs(trace - stieltjes));
      row[k] = trace;
    }
    out.values[n][s] = std::move(row);
    identityGaps[task] = gap;
  });
  for (double g : identityGaps) out.identityGapMax = std::max(out.identityGapMax, g);

  // Ergodic reference: fiber average of the padded ambient kernel
  // diagonal, Monte Carlo over fresh environments.
  out.reference.assign(tGrid.size(), 0.0);
  out.referenceStdError.assign(tGrid.size(), 0.0);
  std::vector<Vertex> fiber;
  for (int i = 0; i < graph.fiberSize(); ++i) fiber.push_back({graph.group().identity(), i});
  VertexSet fiberSet(fiber);
  std::vector<std::vector<double>> mcValues(params.mcSamples,
                                            std::vector<double>(tGrid.size(), 0.0));
  parallelFor(params.mcSamples, params.threads, [&](std::size_t m) {
    EnvironmentSample omega = EnvironmentSample::fresh(
        params.mcSeedBase + m, law, graph.group());
    VertexSet window = bfsWithin(graph, fiberSet, params.ambientPad);
    DirichletMatrix M = assembleDirichlet(graph, window, omega, u, params.denseLimit);
    Spectrum spec = eigenvalues(M, true);
    const auto& verts = window.vertices();
    for (std::size_t k = 0; k < tGrid.size(); ++k) {
      double sum = 0.0;
      for (const Vertex& x : fiberSet) {
        auto it = std::lower_bound(verts.begin(), verts.end(), x);
        sum += heatKernelDiagonal(spec, tGrid[k], static_cast<int>(it - verts.begin()));
      }
      mcValues[m][k] = sum / graph.fiberSize();
    }
  });
  for (std::size_t k = 0; k < tGrid.size(); ++k) {
    double mean = 0.0;
    for (int m = 0; m < params.mcSamples; ++m) mean += mcValues[m][k];
    mean /= params.mcSamples;
    double var = 0.0;
    for (int m = 0; m < params.mcSamples; ++m) {
      var += (mcValues[m][k] - mean) * (mcValues[m][k] - mean);
    }
    var = params.mcSamples > 1 ? var / (params.mcSamples - 1) : 0.0;
    out.reference[k] = mean;
    out.referenceStdError[k] = std::sqrt(var / params.mcSamples);
  }
  return out;
}

KernelLemmaResult heatKernelLemmaGap(const PeriodicGraph& graph,
                                     const AdmissibleSequence& adm,
                                     const EnvironmentSample& omega,
                                     const SingleSitePotential& u, double t,
                                     int ambientPad, int minRecommendedPad,
                                     int denseLimit) {
  KernelLemmaResult out;
  if (minRecommendedPad > 0 && ambientPad < minRecommendedPad) {
    out.warnings.push_back("ambientPad " + std::to_string(ambientPad) +
                           " below recommended h(t,eps) = " +
                           std::to_string(minRecommendedPad));
  }
  for (std::size_t n = 0; n < adm.domains.size(); ++n) {
    VertexSet A = phi(adm.folner.indexSets[n], graph);
    std::vector<double> diag = paddedKernelDiagonals(graph, omega, u, t, A,
                                                     ambientPad, denseLimit);
    double ambientAvg = 0.0;
    for (double v : diag) ambientAvg += v;
    ambientAvg /= static_cast<double>(A.size());

    DirichletMatrix M = assembleDirichlet(graph, adm.domains[n], omega, u, denseLimit);
    Spectrum spec = eigenvalues(M, false);
    const double trace =
        heatTrace(spec, t, static_cast<double>(adm.domains[n].size()));
    out.gaps.push_back(std::abs(ambientAvg - trace));
  }
  return out;
}

ErgodicAverageResult ergodicAverage(const PeriodicGraph& graph,
                                    const SiteFunction& f,
                                    const EnvironmentSample& omega,
                                    const std::vector<VertexSet>& sets,
                                    const CouplingLaw& law, int mcSamples,
                                    std::uint64_t mcSeedBase) {
  if (mcSamples < 2) throw std::invalid_argument("ergodicAverage: need >= 2 MC samples");
  ErgodicAverageResult out;
  for (const VertexSet& A : sets) {
    if (A.empty()) throw std::invalid_argument("ergodicAverage: empty set");
    double sum = 0.0;
    for (const Vertex& x : A) sum += f(omega, x);
    out.averages.push_back(sum / static_cast<double>(A.size()));
  }
  std::vector<double> samples(mcSamples, 0.0);
  for (int m = 0; m < mcSamples; ++m) {
    EnvironmentSample fresh =
        EnvironmentSample::fresh(mcSeedBase + m, law, graph.group());
    double sum = 0.0;
    for (int i = 0; i < graph.fiberSize(); ++i) {
      sum += f(fresh, {graph.group().identity(), i});
    }
    samples[m] = sum / graph.fiberSize();
  }
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= mcSamples;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= (mcSamples - 1);
  out.reference = mean;
  out.referenceStdError = std::sqrt(var / mcSamples);
  return out;
}

PasturSubinResult pasturSubinLimit(const LaplaceReport& report,
                                   const IDSEstimate& idse, double c0,
                                   const std::function<double(double)>& traceUpperBound,
                                   double cauchyThreshold) {
  PasturSubinResult out;
  if (report.tGrid.empty() || idse.lambdaGrid.empty()) {
    throw std::invalid_argument("pasturSubinLimit: empty grid");
  }
  // a) no spectrum below -C_0
  for (std::size_t i = 0; i < idse.minEigenvalue.size(); ++i) {
    if (idse.minEigenvalue[i] < -c0 - 1e-10) {
      const std::size_t S = idse.seeds.size();
      out.failedHypothesis = "a: eigenvalue " + std::to_string(idse.minEigenvalue[i]) +
                             " below -C0 at (n=" + std::to_string(i / S) +
                             ", seed=" + std::to_string(idse.seeds[i % S]) + ")";
      return out;
    }
  }
  // b) Laplace transforms below the witness bound
  for (std::size_t n = 0; n < report.values.size(); ++n) {
    for (std::size_t s = 0; s < report.values[n].size(); ++s) {
      for (std::size_t k = 0; k < report.tGrid.size(); ++k) {
        const double bound = traceUpperBound(report.tGrid[k]);
        if (report.values[n][s][k] > bound + 1e-10) {
          out.failedHypothesis =
              "b: trace " + std::to_string(report.values[n][s][k]) + " above witness " +
              std::to_string(bound) + " at (n=" + std::to_string(n) +
              ", seed=" + std::to_string(report.seeds[s]) +
              ", t=" + std::to_string(report.tGrid[k]) + ")";
          return out;
        }
      }
    }
  }
  // c) Cauchy in t
  const std::size_t N = report.values.size();
  out.cauchyGapPerT.assign(report.tGrid.size(), 0.0);
  bool allZero = true;
  if (N >= 2) {
    std::vector<double> prev = report.seedMean(N - 2);
    std::vector<double> cur = report.seedMean(N - 1);
    for (std::size_t k = 0; k < report.tGrid.size(); ++k) {
      out.cauchyGapPerT[k] = std::abs(cur[k] - prev[k]);
      if (out.cauchyGapPerT[k] != 0.0) allZero = false;
      if (out.cauchyGapPerT[k] > cauchyThreshold) {
        out.failedHypothesis = "c: Cauchy gap " + std::to_string(out.cauchyGapPerT[k]) +
                               " above threshold at t=" + std::to_string(report.tGrid[k]);
        return out;
      }
    }
  }
  out.pass = true;
  out.stationary = allZero;
  out.limit = idse.limit;
  return out;
}

double nonRandomnessDistance(const IDSEstimate& groupA, const IDSEstimate& groupB,
                             const std::vector<bool>& excluded) {
  if (groupA.lambdaGrid != groupB.lambdaGrid) {
    throw std::invalid_argument("nonRandomnessDistance: mismatched grids");
  }
  double sup = 0.0;
  for (std::size_t g = 0; g < groupA.lambdaGrid.size(); ++g) {
    if (!excluded.empty() && excluded[g]) continue;
    sup = std::max(sup, std::abs(groupA.limit[g] - groupB.limit[g]));
  }
  return sup;
}

std::vector<bool> atomExclusionMask(const IDSEstimate& idse, double tol) {
  std::vector<bool> mask(idse.lambdaGrid.size(), false);
  if (idse.largestNSpectra.empty()) return mask;
  for (std::size_t g = 0; g < idse.lambdaGrid.size(); ++g) {
    const double lambda = idse.lambdaGrid[g];
    std::size_t hits = 0;
    for (const auto& spectrum : idse.largestNSpectra) {
      auto it = std::lower_bound(spectrum.begin(), spectrum.end(), lambda - tol);
      if (it != spectrum.end() && *it <= lambda + tol) ++hits;
    }
    if (2 * hits >= idse.largestNSpectra.size()) mask[g] = true;
  }
  return mask;
}

}  // namespace idslab
