#include <benchmark/benchmark.h>

#include "idslab/folner.hpp"
#include "idslab/schrodinger.hpp"
#include "idslab/spectral.hpp"

using namespace idslab;

namespace {

VertexSet interval(const GroupSpec& spec, const PeriodicGraph&, int r) {
  std::vector<Vertex> verts;
  for (int i = -r; i <= r; ++i) {
    GroupElement g = spec.identity();
    g.c[0] = i;
    verts.push_back({g, 0});
  }
  return VertexSet(verts);
}

void BM_EigenvaluesTridiagonal(benchmark::State& state) {
  GroupSpec spec = GroupSpec::integerLattice(1, 1 << 16);
  PeriodicGraph line = PeriodicGraph::cayley(spec);
  SingleSitePotential u = SingleSitePotential::unitMass(spec);
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  EnvironmentSample omega = EnvironmentSample::fresh(1, law, spec);
  VertexSet D = interval(spec, line, static_cast<int>(state.range(0)));
  DirichletMatrix M = assembleDirichlet(line, D, omega, u);
  for (auto _ : state) {
    Spectrum s = eigenvalues(M, false);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenvaluesTridiagonal)->Range(64, 1024)->Complexity();

void BM_EigenvaluesDense(benchmark::State& state) {
  GroupSpec spec = GroupSpec::integerLattice(2);
  PeriodicGraph plane = PeriodicGraph::cayley(spec);
  SingleSitePotential u = SingleSitePotential::unitMass(spec);
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  EnvironmentSample omega = EnvironmentSample::fresh(1, law, spec);
  VertexSet D = phi(spec.ball(static_cast<int>(state.range(0))), plane);
  DirichletMatrix M = assembleDirichlet(plane, D, omega, u);
  for (auto _ : state) {
    Spectrum s = eigenvalues(M, false);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
}
BENCHMARK(BM_EigenvaluesDense)->DenseRange(4, 12, 4);

void BM_HeisenbergBall(benchmark::State& state) {
  for (auto _ : state) {
    GroupSpec spec = GroupSpec::heisenberg(128);
    benchmark::DoNotOptimize(spec.ball(static_cast<int>(state.range(0))).size());
  }
}
BENCHMARK(BM_HeisenbergBall)->Arg(8)->Arg(16)->Arg(32);

void BM_ChebyshevHeatTrace(benchmark::State& state) {
  GroupSpec spec = GroupSpec::integerLattice(2);
  PeriodicGraph plane = PeriodicGraph::cayley(spec);
  SingleSitePotential u = SingleSitePotential::unitMass(spec);
  CouplingLaw law = CouplingLaw::uniform(0.0, 1.0);
  EnvironmentSample omega = EnvironmentSample::fresh(1, law, spec);
  VertexSet D = phi(spec.ball(static_cast<int>(state.range(0))), plane);
  DirichletMatrix M = assembleDirichlet(plane, D, omega, u, /*denseLimit=*/1);
  for (auto _ : state) {
    auto r = chebyshevHeatTrace(M, 1.0, 64, 8, 7);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_ChebyshevHeatTrace)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
