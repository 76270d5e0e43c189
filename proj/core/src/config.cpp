#include "idslab/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace idslab {

using nlohmann::json;

namespace {

GroupElement elementFromCoords(const std::vector<std::int64_t>& coords,
                               GroupFamily family, int dim,
                               const std::string& path) {
  GroupElement g;
  g.family = family;
  g.dim = static_cast<std::int8_t>(family == GroupFamily::Heisenberg3 ? 3 : dim);
  if (static_cast<int>(coords.size()) != g.dim) {
    throw ConfigError(path, "expected " + std::to_string(g.dim) + " coordinates");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) g.c[i] = coords[i];
  return g;
}

template <typename T>
T require(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key, "wrong type");
  }
}

template <typename T>
T optional(const json& j, const std::string& path, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key, "wrong type");
  }
}

}  // namespace

GroupSpec ExperimentConfig::makeGroupSpec() const {
  if (family == GroupFamily::Heisenberg3) return GroupSpec::heisenberg(maxBallRadius);
  return GroupSpec::integerLattice(dimension, maxBallRadius);
}

PeriodicGraph ExperimentConfig::makeGraph() const {
  GroupSpec spec = makeGroupSpec();
  if (fiberSize == 1 && intraEdges.empty() && interEdges.empty()) {
    return PeriodicGraph::cayley(std::move(spec));
  }
  return PeriodicGraph(std::move(spec), fiberSize, intraEdges, interEdges);
}

SingleSitePotential ExperimentConfig::makePotential() const { return potential; }

double ExperimentConfig::uniformPotentialBound() const {
  if (c0Override >= 0.0) return c0Override;
  return uniformBound(law, potential);
}

std::vector<std::uint64_t> ExperimentConfig::allSeeds() const {
  std::vector<std::uint64_t> out;
  for (const auto& group : seedGroups) out.insert(out.end(), group.begin(), group.end());
  return out;
}

ExperimentConfig ExperimentConfig::fromJsonText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.echo = text;

  const json& grp = j.contains("group") ? j.at("group") : json::object();
  std::string fam = optional<std::string>(grp, "group", "family", "integer_lattice");
  if (fam == "integer_lattice") {
    cfg.family = GroupFamily::IntegerLattice;
  } else if (fam == "heisenberg") {
    cfg.family = GroupFamily::Heisenberg3;
  } else {
    throw ConfigError("group.family", "unknown family '" + fam + "'");
  }
  cfg.dimension = optional<int>(grp, "group", "dimension", 1);
  if (cfg.family == GroupFamily::IntegerLattice &&
      (cfg.dimension < 1 || cfg.dimension > 3)) {
    throw ConfigError("group.dimension", "must be in [1,3]");
  }
  cfg.maxBallRadius = optional<int>(grp, "group", "maxBallRadius",
                                    cfg.family == GroupFamily::Heisenberg3 ? 512 : 4096);

  if (j.contains("graph")) {
    const json& gj = j.at("graph");
    cfg.fiberSize = optional<int>(gj, "graph", "fiberSize", 1);
    if (cfg.fiberSize < 1) throw ConfigError("graph.fiberSize", "must be >= 1");
    if (gj.contains("intraEdges")) {
      for (std::size_t i = 0; i < gj.at("intraEdges").size(); ++i) {
        const auto& e = gj.at("intraEdges").at(i);
        const std::string path = "graph.intraEdges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2) throw ConfigError(path, "expected [i, j]");
        cfg.intraEdges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      }
    }
    if (gj.contains("interEdges")) {
      for (std::size_t i = 0; i < gj.at("interEdges").size(); ++i) {
        const auto& e = gj.at("interEdges").at(i);
        const std::string path = "graph.interEdges[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ConfigError(path, "expected object");
        auto coords = require<std::vector<std::int64_t>>(e, path, "generator");
        PeriodicGraph::InterEdge edge;
        edge.generator = elementFromCoords(coords, cfg.family, cfg.dimension,
                                           path + ".generator");
        edge.fromFiber = require<int>(e, path, "fromFiber");
        edge.toFiber = require<int>(e, path, "toFiber");
        cfg.interEdges.push_back(edge);
      }
    }
  }

  const json& fj = j.contains("folner") ? j.at("folner") : json::object();
  cfg.radii = optional<std::vector<int>>(fj, "folner", "radii", {});
  cfg.selectMaxRadius = optional<int>(fj, "folner", "selectMaxRadius", 0);
  cfg.selectDMax = optional<int>(fj, "folner", "selectDMax", 1);
  cfg.selectEpsilon = optional<double>(fj, "folner", "selectEpsilon", 0.1);
  cfg.reportDMax = optional<int>(fj, "folner", "reportDMax", 1);
  cfg.decayThreshold = optional<double>(fj, "folner", "decayThreshold", 0.05);
  cfg.admissible.temperedC = optional<double>(fj, "folner", "temperedC", 4.0);
  cfg.admissible.h = optional<int>(fj, "folner", "h", 0);
  cfg.admissible.toggleProbability =
      optional<double>(fj, "folner", "toggleProbability", 0.5);
  cfg.admissible.approximationSeed =
      optional<std::uint64_t>(fj, "folner", "approximationSeed", 0);
  if (cfg.radii.empty() && cfg.selectMaxRadius <= 0) {
    throw ConfigError("folner.radii", "either radii or selectMaxRadius required");
  }
  for (std::size_t i = 0; i + 1 < cfg.radii.size(); ++i) {
    if (cfg.radii[i] >= cfg.radii[i + 1]) {
      throw ConfigError("folner.radii", "must be strictly increasing");
    }
  }

  const json& pj = j.contains("potential") ? j.at("potential") : json::object();
  if (pj.contains("law")) {
    const json& lj = pj.at("law");
    std::string type = require<std::string>(lj, "potential.law", "type");
    if (type == "uniform") {
      double a = require<double>(lj, "potential.law", "a");
      double b = require<double>(lj, "potential.law", "b");
      if (!(a < b)) throw ConfigError("potential.law", "need a < b");
      cfg.law = CouplingLaw::uniform(a, b);
    } else if (type == "bernoulli") {
      double p = require<double>(lj, "potential.law", "p");
      if (p < 0.0 || p > 1.0) throw ConfigError("potential.law.p", "must be in [0,1]");
      cfg.law = CouplingLaw::bernoulli(p, optional<double>(lj, "potential.law", "low", 0.0),
                                       optional<double>(lj, "potential.law", "high", 1.0));
    } else if (type == "discrete") {
      std::vector<std::pair<double, double>> atoms;
      if (!lj.contains("atoms")) throw ConfigError("potential.law.atoms", "missing");
      for (const auto& a : lj.at("atoms")) {
        atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
      }
      try {
        cfg.law = CouplingLaw::discrete(std::move(atoms));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("potential.law.atoms", e.what());
      }
    } else {
      throw ConfigError("potential.law.type", "unknown law '" + type + "'");
    }
  }
  if (pj.contains("singleSite")) {
    for (std::size_t i = 0; i < pj.at("singleSite").size(); ++i) {
      const auto& e = pj.at("singleSite").at(i);
      const std::string path = "potential.singleSite[" + std::to_string(i) + "]";
      SingleSitePotential::Entry entry;
      entry.offset = elementFromCoords(require<std::vector<std::int64_t>>(e, path, "offset"),
                                       cfg.family, cfg.dimension, path + ".offset");
      entry.fiber = optional<int>(e, path, "fiber", 0);
      if (entry.fiber < 0 || entry.fiber >= cfg.fiberSize) {
        throw ConfigError(path + ".fiber", "out of range");
      }
      entry.value = require<double>(e, path, "value");
      cfg.potential.support.push_back(entry);
    }
  } else {
    SingleSitePotential::Entry entry;
    GroupElement e;
    e.family = cfg.family;
    e.dim = static_cast<std::int8_t>(cfg.family == GroupFamily::Heisenberg3 ? 3 : cfg.dimension);
    entry.offset = e;
    entry.value = 1.0;
    cfg.potential.support.push_back(entry);
  }
  cfg.c0Override = optional<double>(pj, "potential", "c0Override", -1.0);

  const json& gj = j.contains("grids") ? j.at("grids") : json::object();
  cfg.lambdaGrid = optional<std::vector<double>>(gj, "grids", "lambda", {});
  cfg.tGrid = optional<std::vector<double>>(gj, "grids", "t", {1.0});
  if (!std::is_sorted(cfg.lambdaGrid.begin(), cfg.lambdaGrid.end())) {
    throw ConfigError("grids.lambda", "must be sorted");
  }
  if (!std::is_sorted(cfg.tGrid.begin(), cfg.tGrid.end())) {
    throw ConfigError("grids.t", "must be sorted");
  }
  for (double t : cfg.tGrid) {
    if (t <= 0.0) throw ConfigError("grids.t", "entries must be positive");
  }

  const json& sj = j.contains("seeds") ? j.at("seeds") : json::object();
  if (sj.contains("groups")) {
    for (const auto& group : sj.at("groups")) {
      cfg.seedGroups.push_back(group.get<std::vector<std::uint64_t>>());
    }
  } else {
    cfg.seedGroups.push_back({1});
  }
  std::set<std::uint64_t> seen;
  for (const auto& group : cfg.seedGroups) {
    if (group.empty()) throw ConfigError("seeds.groups", "empty seed group");
    for (std::uint64_t s : group) {
      if (!seen.insert(s).second) {
        throw ConfigError("seeds.groups", "duplicate seed " + std::to_string(s));
      }
    }
  }

  const json& vj = j.contains("solver") ? j.at("solver") : json::object();
  cfg.maxDenseN = optional<int>(vj, "solver", "maxDenseN", 4096);
  cfg.chebyshevProbes = optional<int>(vj, "solver", "chebyshevProbes", 16);
  cfg.chebyshevDegree = optional<int>(vj, "solver", "chebyshevDegree", 64);
  cfg.ambientPad = optional<int>(vj, "solver", "ambientPad", 20);
  cfg.htableMaxPad = optional<int>(vj, "solver", "htableMaxPad", 25);
  cfg.mcSamples = optional<int>(vj, "solver", "mcSamples", 32);

  cfg.outputDir = optional<std::string>(j, "<root>", "outputDir", "out");
  cfg.threads = optional<int>(j, "<root>", "threads", 0);
  return cfg;
}

ExperimentConfig ExperimentConfig::fromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fromJsonText(ss.str());
}

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64Hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace idslab
