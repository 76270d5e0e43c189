#include "doctest.h"

#include <cmath>

#include "idslab/ids.hpp"

using namespace idslab;

namespace {

CouplingLaw zeroLaw() { return CouplingLaw::bernoulli(1.0, 0.0, 0.0); }

double arcsineIds(double lambda) {
  if (lambda <= 0.0) return 0.0;
  if (lambda >= 4.0) return 1.0;
  return std::acos(1.0 - lambda / 2.0) / M_PI;
}

AdmissibleSequence freeLineSequence(const GroupSpec& z1, const PeriodicGraph& line,
                                    std::vector<int> radii) {
  AdmissibleParams params;
  params.temperedC = 4.0;
  return buildAdmissible(line, FolnerSequence::combinatorialBalls(z1, radii), params);
}

std::vector<double> grid(double lo, double hi, int steps) {
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(lo + (hi - lo) * i / steps);
  return g;
}

}  // namespace

TEST_CASE("buildAdmissible with h = 0 keeps the lifted index sets") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {10, 20, 40, 80});
  REQUIRE(adm.domains.size() == 4);
  CHECK(adm.h == 0);
  for (std::size_t n = 0; n < adm.domains.size(); ++n) {
    CHECK(adm.domains[n] == phi(adm.folner.indexSets[n], line));
  }
  CHECK(adm.achievedTemperedSup.toDouble() <= 4.0);
}

TEST_CASE("buildAdmissible h > 0 stays inside the collar") {
  GroupSpec z2 = GroupSpec::integerLattice(2, 128);
  PeriodicGraph plane = PeriodicGraph::cayley(z2);
  AdmissibleParams params;
  params.h = 2;
  params.approximationSeed = 7;
  AdmissibleSequence adm = buildAdmissible(
      plane, FolnerSequence::combinatorialBalls(z2, {4, 8, 16}), params);
  for (std::size_t n = 0; n < adm.domains.size(); ++n) {
    VertexSet A = phi(adm.folner.indexSets[n], plane);
    CHECK(adm.domains[n].symmetricDifference(A).isSubsetOf(hBoundary(plane, A, 2)));
  }
}

TEST_CASE("buildAdmissible needs at least three tempered sets") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleParams params;
  params.temperedC = 1.0;  // unreachable for growing intervals
  CHECK_THROWS_AS(
      buildAdmissible(line, FolnerSequence::combinatorialBalls(z1, {4, 8, 16}), params),
      std::runtime_error);
}

TEST_CASE("free counting functions approach the arcsine law") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {40, 80, 160});
  std::vector<double> lambdas{0.5, 1.0, 2.0, 3.0};
  IDSEstimate est = countingFunctions(line, adm, {1}, SingleSitePotential::unitMass(z1),
                                      zeroLaw(), lambdas);
  REQUIRE(est.limit.size() == 4);
  CHECK(std::abs(est.limit[1] - 1.0 / 3.0) < 2e-3);
  CHECK(std::abs(est.limit[2] - 0.5) < 2e-3);
  for (std::size_t g = 0; g < lambdas.size(); ++g) {
    CHECK(std::abs(est.limit[g] - arcsineIds(lambdas[g])) < 5e-3);
  }
  // estimates sharpen along the sequence
  CHECK(est.cauchyGap.back() < 0.01);
  CHECK(est.spectra.size() == 3);
  CHECK(est.largestNSpectra[0].size() == adm.domains.back().size());
}

TEST_CASE("counting functions are 0 below and 1 above the spectrum") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {10, 20, 40});
  CouplingLaw law = CouplingLaw::bernoulli(0.5, 0.0, 1.5);
  std::vector<double> lambdas{-0.5, 6.0};
  IDSEstimate est = countingFunctions(line, adm, {3, 4}, SingleSitePotential::unitMass(z1),
                                      law, lambdas);
  for (std::size_t n = 0; n < est.values.size(); ++n) {
    for (std::size_t s = 0; s < est.seeds.size(); ++s) {
      CHECK(est.values[n][s][0] == 0.0);
      CHECK(est.values[n][s][1] == 1.0);
    }
  }
  for (double mn : est.minEigenvalue) CHECK(mn >= 0.0);
  for (double mx : est.maxEigenvalue) CHECK(mx <= 4.0 + 1.5);
}

TEST_CASE("counting is equivariant under translated domains and shifted fields") {
  GroupSpec z2 = GroupSpec::integerLattice(2, 128);
  PeriodicGraph plane = PeriodicGraph::cayley(z2);
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  SingleSitePotential u = SingleSitePotential::unitMass(z2);
  EnvironmentSample omega = EnvironmentSample::fresh(19, law, z2);
  GroupElement gamma = z2.identity();
  gamma.c = {9, -4, 0};
  VertexSet D = phi(z2.ball(3), plane);
  std::vector<Vertex> moved;
  for (const Vertex& v : D) moved.push_back({multiply(gamma, v.g), v.fiber});
  Spectrum a = eigenvalues(assembleDirichlet(plane, D, omega, u), false);
  Spectrum b = eigenvalues(
      assembleDirichlet(plane, VertexSet(moved), shift(omega, gamma), u), false);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("Laplace pipeline on the free line") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {40, 80, 160});
  LaplaceParams params;
  params.ambientPad = 30;
  params.mcSamples = 8;
  LaplaceReport rep = laplacePipeline(line, adm, {1}, SingleSitePotential::unitMass(z1),
                                      zeroLaw(), {0.5, 1.0, 2.0}, params);
  CHECK(rep.identityGapMax == 0.0);
  std::vector<double> tail = rep.seedMean(2);
  for (std::size_t k = 0; k < tail.size(); ++k) {
    CHECK(std::abs(tail[k] - freeHeatDiagonal(rep.tGrid[k], 1)) < 5e-3);
    // the MC reference is degenerate for the free field
    CHECK(rep.referenceStdError[k] <= 1e-15);
    CHECK(std::abs(rep.reference[k] - freeHeatDiagonal(rep.tGrid[k], 1)) < 1e-3);
  }
}

TEST_CASE("kernel lemma gap shrinks along the free sequence") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {20, 40, 80, 160});
  EnvironmentSample omega = EnvironmentSample::fresh(1, zeroLaw(), z1);
  KernelLemmaResult r = heatKernelLemmaGap(line, adm, omega,
                                           SingleSitePotential::unitMass(z1), 1.0, 25);
  REQUIRE(r.gaps.size() == 4);
  CHECK(r.gaps.back() < 0.01);
  CHECK(r.gaps.back() < r.gaps.front());
  CHECK(r.warnings.empty());
  KernelLemmaResult tiny = heatKernelLemmaGap(line, adm, omega,
                                              SingleSitePotential::unitMass(z1), 0.01, 25);
  CHECK(tiny.gaps.back() < 1e-3);
  KernelLemmaResult warned = heatKernelLemmaGap(line, adm, omega,
                                                SingleSitePotential::unitMass(z1), 1.0,
                                                5, /*minRecommendedPad=*/10);
  CHECK_FALSE(warned.warnings.empty());
}

TEST_CASE("ergodic averages converge to the mean coupling") {
  GroupSpec z2 = GroupSpec::integerLattice(2, 128);
  PeriodicGraph plane = PeriodicGraph::cayley(z2);
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  SingleSitePotential u = SingleSitePotential::unitMass(z2);
  EnvironmentSample omega = EnvironmentSample::fresh(23, law, z2);
  std::vector<VertexSet> sets;
  for (int r : {8, 16, 32}) sets.push_back(phi(z2.ball(r), plane));
  SiteFunction f = [&u](const EnvironmentSample& w, const Vertex& x) {
    return potentialValue(w, u, x);
  };
  ErgodicAverageResult res = ergodicAverage(plane, f, omega, sets, law, 64, 1000);
  CHECK(std::abs(res.reference - 0.5) <= 4.0 * res.referenceStdError + 1e-12);
  const double finiteVolumeSlack = 1.0 / std::sqrt(static_cast<double>(sets.back().size()));
  CHECK(std::abs(res.averages.back() - res.reference) <=
        4.0 * res.referenceStdError + 4.0 * finiteVolumeSlack);

  SiteFunction one = [](const EnvironmentSample&, const Vertex&) { return 1.0; };
  ErgodicAverageResult constant = ergodicAverage(plane, one, omega, sets, law, 4, 0);
  for (double a : constant.averages) CHECK(a == 1.0);
  CHECK(constant.reference == 1.0);
  CHECK(constant.referenceStdError == 0.0);
}

TEST_CASE("limit verdict accepts the free line and reports stationarity") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {40, 80, 160});
  SingleSitePotential u = SingleSitePotential::unitMass(z1);
  std::vector<double> lambdas = grid(-0.5, 4.5, 50);
  IDSEstimate est = countingFunctions(line, adm, {1, 2}, u, zeroLaw(), lambdas);
  LaplaceParams lp;
  lp.ambientPad = 30;
  lp.mcSamples = 4;
  LaplaceReport rep = laplacePipeline(line, adm, {1, 2}, u, zeroLaw(), {0.5, 1.0}, lp);
  auto witness = [](double t) { return freeHeatDiagonal(t, 1); };
  PasturSubinResult verdict = pasturSubinLimit(rep, est, 0.0, witness);
  CHECK(verdict.pass);
  CHECK(verdict.failedHypothesis.empty());
  CHECK(verdict.limit == est.limit);

  // injected floor violation trips hypothesis (a)
  IDSEstimate broken = est;
  broken.minEigenvalue[0] = -1.5;
  PasturSubinResult bad = pasturSubinLimit(rep, broken, 0.0, witness);
  CHECK_FALSE(bad.pass);
  CHECK(bad.failedHypothesis.substr(0, 1) == "a");

  // a witness that is too small trips hypothesis (b)
  PasturSubinResult squeezed =
      pasturSubinLimit(rep, est, 0.0, [](double) { return 1e-6; });
  CHECK_FALSE(squeezed.pass);
  CHECK(squeezed.failedHypothesis.substr(0, 1) == "b");

  // constant sequences are flagged as stationary
  LaplaceReport flat = rep;
  for (auto& perSeed : flat.values) perSeed = flat.values.back();
  PasturSubinResult stat = pasturSubinLimit(flat, est, 0.0, witness);
  CHECK(stat.stationary);
}

TEST_CASE("non-randomness distance vanishes for the free operator") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {40, 80, 120});
  SingleSitePotential u = SingleSitePotential::unitMass(z1);
  std::vector<double> lambdas = grid(0.0, 4.0, 40);
  IDSEstimate a = countingFunctions(line, adm, {1, 2}, u, zeroLaw(), lambdas);
  IDSEstimate b = countingFunctions(line, adm, {5, 6}, u, zeroLaw(), lambdas);
  CHECK(nonRandomnessDistance(a, b) == 0.0);
}

TEST_CASE("atom exclusion masks shared eigenvalues") {
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 12);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  AdmissibleSequence adm = freeLineSequence(z1, line, {10, 20, 40});
  SingleSitePotential u = SingleSitePotential::unitMass(z1);
  // lambda = 2 is an exact eigenvalue of every odd-length free interval
  std::vector<double> lambdas{1.99, 2.0, 2.01};
  IDSEstimate est = countingFunctions(line, adm, {1, 2, 3}, u, zeroLaw(), lambdas);
  std::vector<bool> mask = atomExclusionMask(est, 1e-6);
  REQUIRE(mask.size() == 3);
  CHECK_FALSE(mask[0]);
  CHECK(mask[1]);
  CHECK_FALSE(mask[2]);
}
