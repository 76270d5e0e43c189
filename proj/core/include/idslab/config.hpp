#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "idslab/folner.hpp"
#include "idslab/graph.hpp"
#include "idslab/ids.hpp"
#include "idslab/random_env.hpp"

namespace idslab {

/// Schema violation; fieldPath names the offending config entry.
struct ConfigError : std::runtime_error {
  std::string fieldPath;
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), fieldPath(std::move(path)) {}
};

/// Everything one experiment needs; parsed and validated from a single
/// JSON file (see docs/config.md for the schema).
struct ExperimentConfig {
  // group / graph
  GroupFamily family = GroupFamily::IntegerLattice;
  int dimension = 1;
  int maxBallRadius = 4096;
  int fiberSize = 1;
  std::vector<std::pair<int, int>> intraEdges;
  std::vector<PeriodicGraph::InterEdge> interEdges;  // generator given by coords

  // Folner construction
  std::vector<int> radii;      // explicit; empty means use selectRadii
  int selectMaxRadius = 0;
  int selectDMax = 1;
  double selectEpsilon = 0.1;
  int reportDMax = 1;
  double decayThreshold = 0.05;
  AdmissibleParams admissible;

  // potential
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  SingleSitePotential potential;
  double c0Override = -1.0;  // < 0 means derive from law and potential

  // grids
  std::vector<double> lambdaGrid;
  std::vector<double> tGrid;

  // seeds, grouped for the non-randomness diagnostic
  std::vector<std::vector<std::uint64_t>> seedGroups;

  // solver budgets
  int maxDenseN = 4096;
  int chebyshevProbes = 16;
  int chebyshevDegree = 64;
  int ambientPad = 20;
  int htableMaxPad = 25;
  int mcSamples = 32;

  std::string outputDir = "out";
  int threads = 0;

  GroupSpec makeGroupSpec() const;
  PeriodicGraph makeGraph() const;
  SingleSitePotential makePotential() const;  // tagged with the group family
  double uniformPotentialBound() const;
  std::vector<std::uint64_t> allSeeds() const;

  static ExperimentConfig fromJsonText(const std::string& text);
  static ExperimentConfig fromFile(const std::string& path);

  /// The raw config text (echoed into report.json).
  std::string echo;
};

/// 17-significant-digit formatting used by every CSV/JSON emitter so
/// that re-runs are byte-identical.
std::string formatDouble(double v);

/// FNV-1a 64-bit digest, hex encoded; used for config hashes and the
/// manifest file inventory.
std::string fnv1a64Hex(const std::string& data);

}  // namespace idslab
