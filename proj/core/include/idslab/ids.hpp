#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "idslab/folner.hpp"
#include "idslab/spectral.hpp"

namespace idslab {

/// Tempered Folner index sets together with the domains D_n used for
/// the restricted operators.  Each D_n is an h-approximation of
/// A_n = phi(I_n) (equal when h = 0); the containment
/// D_n delta A_n in bd_h(A_n) is asserted at construction.
struct AdmissibleSequence {
  FolnerSequence folner;        // tempered
  std::vector<VertexSet> domains;
  int h = 0;
  Rational achievedTemperedSup{0, 1};
};

struct AdmissibleParams {
  double temperedC = 4.0;
  int h = 0;
  double toggleProbability = 0.5;
  std::uint64_t approximationSeed = 0;
};

/// Builds the admissible sequence from a candidate Folner sequence.
/// Throws if the tempered extraction keeps fewer than 3 sets.
AdmissibleSequence buildAdmissible(const PeriodicGraph& graph,
                                   const FolnerSequence& candidate,
                                   const AdmissibleParams& params);

/// Per-(n, seed) normalized eigenvalue counting functions over a
/// lambda grid, plus the largest-n seed average as the limit estimate.
struct IDSEstimate {
  std::vector<double> lambdaGrid;
  std::vector<std::uint64_t> seeds;
  // values[n][s][g]: N^omega_{D_n}(lambda_g) for seed s
  std::vector<std::vector<std::vector<double>>> values;
  std::vector<double> minEigenvalue;  // per (n*seeds + s)
  std::vector<double> maxEigenvalue;
  std::vector<double> limit;          // seed average at largest n
  std::vector<double> cauchyGap;      // per n >= 1: sup_g |mean_n - mean_{n-1}|
  std::vector<std::vector<double>> largestNSpectra;  // eigenvalues per seed
  // spectra[n][s]: all eigenvalues, kept for report regeneration
  std::vector<std::vector<std::vector<double>>> spectra;

  std::vector<double> seedMean(std::size_t n) const;
};

IDSEstimate countingFunctions(const PeriodicGraph& graph,
                              const AdmissibleSequence& adm,
                              const std::vector<std::uint64_t>& seeds,
                              const SingleSitePotential& u,
                              const CouplingLaw& law,
                              const std::vector<double>& lambdaGrid,
                              int threads = 0, int denseLimit = 4096);

/// Laplace transforms along the sequence.  The trace route and the
/// Stieltjes route are compared per task; identityGapMax records the
/// largest observed difference (zero by construction).
struct LaplaceReport {
  std::vector<double> tGrid;
  std::vector<std::uint64_t> seeds;
  // values[n][s][k]: normalized trace of exp(-t_k H^omega_{D_n})
  std::vector<std::vector<std::vector<double>>> values;
  std::vector<double> reference;  // ergodic reference per t (Monte Carlo)
  std::vector<double> referenceStdError;
  double identityGapMax = 0.0;

  std::vector<double> seedMean(std::size_t n) const;
};

struct LaplaceParams {
  int ambientPad = 20;      // collar for the ambient-diagonal reference
  int mcSamples = 32;       // fresh environments for the reference
  std::uint64_t mcSeedBase = 0x51700000u;
  int threads = 0;
  int denseLimit = 4096;
};

LaplaceReport laplacePipeline(const PeriodicGraph& graph,
                              const AdmissibleSequence& adm,
                              const std::vector<std::uint64_t>& seeds,
                              const SingleSitePotential& u,
                              const CouplingLaw& law,
                              const std::vector<double>& tGrid,
                              const LaplaceParams& params = {});

/// Heat kernel diagonals of the ambient operator, approximated on a
/// finite window: the requested set padded by `pad` BFS layers.  Returns
/// values aligned with targets.vertices().
std::vector<double> paddedKernelDiagonals(const PeriodicGraph& graph,
                                          const EnvironmentSample& omega,
                                          const SingleSitePotential& u,
                                          double t, const VertexSet& targets,
                                          int pad, int denseLimit = 4096);

struct KernelLemmaResult {
  std::vector<double> gaps;           // per n
  std::vector<std::string> warnings;  // e.g. pad below the h(t,eps) table
};

/// | (1/|A_n|) sum_{x in A_n} k̂(t,x,x) - (1/|D_n|) Tr exp(-t H_{D_n}) |
/// per n, with the ambient diagonal approximated on A_n padded by
/// ambientPad.  minRecommendedPad (from the empirical h(t,eps) table)
/// only triggers a warning when violated.
KernelLemmaResult heatKernelLemmaGap(const PeriodicGraph& graph,
                                     const AdmissibleSequence& adm,
                                     const EnvironmentSample& omega,
                                     const SingleSitePotential& u, double t,
                                     int ambientPad,
                                     int minRecommendedPad = 0,
                                     int denseLimit = 4096);

/// Site function of (omega, x), bounded.
using SiteFunction = std::function<double(const EnvironmentSample&, const Vertex&)>;

struct ErgodicAverageResult {
  std::vector<double> averages;  // (1/|A_n|) sum_{x in A_n} f(omega, x) per n
  double reference = 0.0;        // (1/|F|) E[sum_{x in F} f(., x)], Monte Carlo
  double referenceStdError = 0.0;
};

ErgodicAverageResult ergodicAverage(const PeriodicGraph& graph,
                                    const SiteFunction& f,
                                    const EnvironmentSample& omega,
                                    const std::vector<VertexSet>& sets,
                                    const CouplingLaw& law, int mcSamples,
                                    std::uint64_t mcSeedBase);

/// Verdict of the distribution-function limit argument: the sequence
/// must vanish below -C_0, obey the heat-trace upper bound witness, and
/// be Cauchy in t before the largest-n counting function is accepted as
/// the limit.
struct PasturSubinResult {
  bool pass = false;
  std::string failedHypothesis;  // "a", "b" or "c" with witness coordinates
  bool stationary = false;       // all Cauchy gaps exactly zero
  std::vector<double> limit;     // per lambda grid point
  std::vector<double> cauchyGapPerT;  // final consecutive gap per t
};

PasturSubinResult pasturSubinLimit(const LaplaceReport& report,
                                   const IDSEstimate& idse, double c0,
                                   const std::function<double(double)>& traceUpperBound,
                                   double cauchyThreshold = 0.05);

/// Sup distance over the grid between group-averaged counting functions
/// at the largest n; excluded grid points (atom clusters) are skipped.
double nonRandomnessDistance(const IDSEstimate& groupA, const IDSEstimate& groupB,
                             const std::vector<bool>& excluded = {});

/// Grid points lying within `tol` of a spectral atom cluster: an
/// eigenvalue present (within tol) in at least half of the largest-n
/// per-seed spectra.
std::vector<bool> atomExclusionMask(const IDSEstimate& idse, double tol = 1e-6);

}  // namespace idslab
