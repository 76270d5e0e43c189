#include "doctest.h"

#include <cmath>

#include "idslab/config.hpp"

using namespace idslab;

namespace {

const char* kMinimal = R"({
  "group": {"family": "integer_lattice", "dimension": 1},
  "folner": {"radii": [10, 20, 40]},
  "grids": {"lambda": [0.5, 1.0, 2.0], "t": [0.5, 1.0]}
})";

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  ExperimentConfig cfg = ExperimentConfig::fromJsonText(kMinimal);
  CHECK(cfg.family == GroupFamily::IntegerLattice);
  CHECK(cfg.dimension == 1);
  CHECK(cfg.fiberSize == 1);
  CHECK(cfg.radii == std::vector<int>{10, 20, 40});
  CHECK(cfg.admissible.temperedC == 4.0);
  CHECK(cfg.admissible.h == 0);
  CHECK(cfg.law.kind == CouplingLaw::Kind::Uniform);
  REQUIRE(cfg.potential.support.size() == 1);
  CHECK(isIdentity(cfg.potential.support[0].offset));
  CHECK(cfg.potential.support[0].value == 1.0);
  CHECK(cfg.seedGroups == std::vector<std::vector<std::uint64_t>>{{1}});
  CHECK(cfg.uniformPotentialBound() == 1.0);
  CHECK(cfg.outputDir == "out");
  CHECK(cfg.makeGraph().fiberSize() == 1);
}

TEST_CASE("full config round trip") {
  const char* text = R"({
    "group": {"family": "heisenberg", "maxBallRadius": 64},
    "folner": {"radii": [4, 8], "temperedC": 6.0, "h": 1, "approximationSeed": 9},
    "potential": {
      "law": {"type": "bernoulli", "p": 0.5, "low": 0.0, "high": 2.0},
      "singleSite": [{"offset": [0, 0, 0], "value": 1.5}],
      "c0Override": 7.5
    },
    "grids": {"lambda": [0.0, 1.0], "t": [1.0]},
    "seeds": {"groups": [[1, 2], [3, 4]]},
    "solver": {"maxDenseN": 512, "ambientPad": 10},
    "outputDir": "runs/h3",
    "threads": 2
  })";
  ExperimentConfig cfg = ExperimentConfig::fromJsonText(text);
  CHECK(cfg.family == GroupFamily::Heisenberg3);
  CHECK(cfg.maxBallRadius == 64);
  CHECK(cfg.admissible.temperedC == 6.0);
  CHECK(cfg.admissible.h == 1);
  CHECK(cfg.law.kind == CouplingLaw::Kind::Bernoulli);
  CHECK(cfg.law.valueHigh == 2.0);
  CHECK(cfg.potential.support[0].value == 1.5);
  CHECK(cfg.uniformPotentialBound() == 7.5);
  CHECK(cfg.allSeeds() == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(cfg.maxDenseN == 512);
  CHECK(cfg.ambientPad == 10);
  CHECK(cfg.outputDir == "runs/h3");
  CHECK(cfg.threads == 2);
  CHECK(cfg.echo == text);
}

TEST_CASE("errors carry dotted field paths") {
  auto fieldOf = [](const char* text) {
    try {
      ExperimentConfig::fromJsonText(text);
    } catch (const ConfigError& e) {
      return e.fieldPath;
    }
    return std::string("<no error>");
  };

  CHECK(fieldOf(R"({"group": {"family": "free"}})") == "group.family");
  CHECK(fieldOf(R"({"group": {"dimension": 4}, "folner": {"radii": [2]}})") ==
        "group.dimension");
  CHECK(fieldOf(R"({"folner": {}})") == "folner.radii");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 4]}})") == "folner.radii");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "grids": {"t": [2.0, 1.0]}})") == "grids.t");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "grids": {"t": [-1.0, 1.0]}})") == "grids.t");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "grids": {"lambda": [2.0, 1.0]}})") == "grids.lambda");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "seeds": {"groups": [[1], [1]]}})") == "seeds.groups");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "potential": {"law": {"type": "uniform", "a": 1.0, "b": 1.0}}})") ==
        "potential.law");
  CHECK(fieldOf(R"({"folner": {"radii": [4, 8]},
                    "potential": {"law": {"type": "gaussian"}}})") ==
        "potential.law.type");
  CHECK(fieldOf(R"({"graph": {"fiberSize": 0}, "folner": {"radii": [4]}})") ==
        "graph.fiberSize");
  CHECK(fieldOf("not json") == "<root>");
  CHECK(fieldOf(R"({"folner": {"radii": "nope"}})") == "folner.radii");
}

TEST_CASE("fromFile reports unreadable paths") {
  CHECK_THROWS_AS(ExperimentConfig::fromFile("/nonexistent/x.json"), ConfigError);
}

TEST_CASE("formatDouble round trips 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, 2.0 - 2.0 * std::cos(0.31), 1e-300, -4.25, 0.0}) {
    CHECK(std::stod(formatDouble(v)) == v);
  }
  CHECK(formatDouble(0.5) == "0.5");
}

TEST_CASE("fnv1a64 digests are stable") {
  CHECK(fnv1a64Hex("") == "cbf29ce484222325");
  CHECK(fnv1a64Hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64Hex("abc") != fnv1a64Hex("abd"));
}
