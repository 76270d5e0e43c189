#include "doctest.h"

#include <cmath>
#include <random>

#include "idslab/schrodinger.hpp"
#include "idslab/spectral.hpp"

using namespace idslab;

namespace {

GroupElement lat(const GroupSpec& spec, std::int64_t a) {
  GroupElement g = spec.identity();
  g.c[0] = a;
  return g;
}

VertexSet interval(const GroupSpec& z1, int n) {
  std::vector<Vertex> verts;
  for (int i = 0; i < n; ++i) verts.push_back({lat(z1, i), 0});
  return VertexSet(verts);
}

CouplingLaw zeroLaw() { return CouplingLaw::bernoulli(1.0, 0.0, 0.0); }

DirichletMatrix freeInterval(int n, int denseLimit = 4096) {
  static GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 15);
  static PeriodicGraph line = PeriodicGraph::cayley(z1);
  EnvironmentSample omega = EnvironmentSample::fresh(1, zeroLaw(), z1);
  return assembleDirichlet(line, interval(z1, n), omega,
                           SingleSitePotential::unitMass(z1), denseLimit);
}

DirichletMatrix randomAnderson(int n, std::uint64_t seed, int denseLimit = 4096) {
  static GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 15);
  static PeriodicGraph line = PeriodicGraph::cayley(z1);
  CouplingLaw law = CouplingLaw::uniform(-1.0, 1.0);
  EnvironmentSample omega = EnvironmentSample::fresh(seed, law, z1);
  return assembleDirichlet(line, interval(z1, n), omega,
                           SingleSitePotential::unitMass(z1), denseLimit);
}

std::vector<double> randomSymmetric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double v = unit(rng);
      m[static_cast<std::size_t>(i) * n + j] = v;
      m[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return m;
}

// det(M - lambda I) by Gaussian elimination with partial pivoting;
// independent of the eigensolver's Householder/QL path.
double charPoly(const std::vector<double>& m, int n, double lambda) {
  std::vector<double> a = m;
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] -= lambda;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row) {
      if (std::abs(a[static_cast<std::size_t>(row) * n + col]) >
          std::abs(a[static_cast<std::size_t>(pivot) * n + col])) {
        pivot = row;
      }
    }
    if (a[static_cast<std::size_t>(pivot) * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[static_cast<std::size_t>(pivot) * n + k],
                  a[static_cast<std::size_t>(col) * n + k]);
      }
      det = -det;
    }
    det *= a[static_cast<std::size_t>(col) * n + col];
    for (int row = col + 1; row < n; ++row) {
      double f = a[static_cast<std::size_t>(row) * n + col] /
                 a[static_cast<std::size_t>(col) * n + col];
      for (int k = col; k < n; ++k) {
        a[static_cast<std::size_t>(row) * n + k] -=
            f * a[static_cast<std::size_t>(col) * n + k];
      }
    }
  }
  return det;
}

std::vector<double> rootsByBisection(const std::vector<double>& m, int n) {
  double radius = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(m[static_cast<std::size_t>(i) * n + j]);
    radius = std::max(radius, row);
  }
  const int grid = 40000;
  std::vector<double> roots;
  double prevX = -radius, prevF = charPoly(m, n, prevX);
  for (int k = 1; k <= grid; ++k) {
    double x = -radius + 2.0 * radius * k / grid;
    double f = charPoly(m, n, x);
    if ((prevF < 0) != (f < 0)) {
      double lo = prevX, hi = x;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if ((charPoly(m, n, mid) < 0) == (prevF < 0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prevX = x;
    prevF = f;
  }
  return roots;
}

}  // namespace

TEST_CASE("trivial spectra") {
  Spectrum s1 = eigenvalues(freeInterval(1), false);
  REQUIRE(s1.eigenvalues.size() == 1);
  CHECK(s1.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-15));

  Spectrum s2 = eigenvalues(freeInterval(2), false);
  CHECK(s2.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s2.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));

  Spectrum s3 = eigenvalues(freeInterval(3), false);
  CHECK(s3.eigenvalues[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(s3.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s3.eigenvalues[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("Toeplitz closed form up to n = 512") {
  for (int n : {8, 64, 257, 512}) {
    Spectrum s = eigenvalues(freeInterval(n), false);
    REQUIRE(static_cast<int>(s.eigenvalues.size()) == n);
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
    for (int k = 1; k <= n; ++k) {
      CHECK(std::abs(s.eigenvalues[k - 1] -
                     (2.0 - 2.0 * std::cos(k * M_PI / (n + 1)))) <= 1e-10);
    }
  }
}

TEST_CASE("small dense matrices match characteristic-polynomial roots") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    std::vector<double> m = randomSymmetric(n, rng);
    std::vector<double> roots = rootsByBisection(m, n);
    Spectrum s = eigenvaluesDense(m, n, false);
    REQUIRE(roots.size() == s.eigenvalues.size());  // distinct a.s.
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(std::abs(s.eigenvalues[i] - roots[i]) <= 1e-8);
    }
  }
}

TEST_CASE("eigenvectors have small residual and are orthonormal") {
  std::mt19937_64 rng(43);
  const int n = 20;
  std::vector<double> m = randomSymmetric(n, rng);
  Spectrum s = eigenvaluesDense(m, n, true);
  for (int i = 0; i < n; ++i) {
    double residual = 0.0;
    for (int r = 0; r < n; ++r) {
      double mv = 0.0;
      for (int c = 0; c < n; ++c) {
        mv += m[static_cast<std::size_t>(r) * n + c] * s.vectorComponent(c, i);
      }
      residual = std::max(residual,
                          std::abs(mv - s.eigenvalues[i] * s.vectorComponent(r, i)));
    }
    CHECK(residual <= 1e-10);
    for (int j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (int r = 0; r < n; ++r) dot += s.vectorComponent(r, i) * s.vectorComponent(r, j);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("countBelow is strict and normalized") {
  Spectrum s = eigenvalues(freeInterval(2), false);  // {1, 3}
  CHECK(countBelow(s, 0.5, 2.0).count == 0);
  CHECK(countBelow(s, 1.0, 2.0).count == 0);  // strict at an eigenvalue
  CHECK(countBelow(s, 2.0, 2.0).count == 1);
  CHECK(countBelow(s, 2.0, 2.0).normalized == 0.5);
  CHECK(countBelow(s, 3.5, 2.0).count == 2);
}

TEST_CASE("Sturm count agrees with the solved spectrum") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> range(-3.0, 7.0);
  for (int trial = 0; trial < 50; ++trial) {
    DirichletMatrix M = randomAnderson(8 + static_cast<int>(rng() % 56), rng());
    Spectrum s = eigenvalues(M, false);
    for (int j = 0; j < 20; ++j) {
      double lambda = range(rng);
      CHECK(sturmCount(M, lambda).count == countBelow(s, lambda, 1.0).count);
    }
    // below/above the Gershgorin interval
    auto [lo, hi] = M.gershgorinBounds();
    CHECK(sturmCount(M, lo - 1.0).count == 0);
    CHECK(sturmCount(M, hi + 1.0).count == M.dimension());
  }
}

TEST_CASE("Sturm count jitters through exact pivots") {
  // lambda = 2 is an eigenvalue of the free 3-site interval and makes
  // the first pivot vanish; the perturbed count lands on either side
  // of the coincident eigenvalue.
  DirichletMatrix M = freeInterval(3);
  SturmResult r = sturmCount(M, 2.0);
  CHECK(r.jittered);
  CHECK(r.lambdaUsed != 2.0);
  CHECK(r.count >= 1);
  CHECK(r.count <= 2);
}

TEST_CASE("heat traces") {
  Spectrum single = eigenvalues(freeInterval(1), false);
  CHECK(heatTrace(single, 1.0, 1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  Spectrum s2 = eigenvalues(freeInterval(2), false);
  CHECK(heatTrace(s2, 1.0, 2.0) ==
        doctest::Approx(0.5 * (std::exp(-1.0) + std::exp(-3.0))).epsilon(1e-13));
  CHECK(heatTrace(s2, 1e-12, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  // monotone decreasing in t for positive spectra
  CHECK(heatTrace(s2, 2.0, 2.0) < heatTrace(s2, 1.0, 2.0));
}

TEST_CASE("heat kernel diagonal sums to the trace") {
  DirichletMatrix M = randomAnderson(30, 5);
  Spectrum s = eigenvalues(M, true);
  for (double t : {0.5, 1.0, 3.0}) {
    double sum = 0.0;
    for (int x = 0; x < 30; ++x) sum += heatKernelDiagonal(s, t, x);
    CHECK(sum / 30.0 == doctest::Approx(heatTrace(s, t, 30.0)).epsilon(1e-12));
  }
  Spectrum single = eigenvalues(freeInterval(1), true);
  CHECK(heatKernelDiagonal(single, 1.0, 0) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("distribution function: left continuity and exact Laplace identity") {
  // duplicate eigenvalues via a disconnected pair of single sites
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 15);
  PeriodicGraph line = PeriodicGraph::cayley(z1);
  EnvironmentSample omega = EnvironmentSample::fresh(1, zeroLaw(), z1);
  std::vector<Vertex> two{{lat(z1, 0), 0}, {lat(z1, 5), 0}};
  DirichletMatrix M = assembleDirichlet(line, VertexSet(two), omega,
                                        SingleSitePotential::unitMass(z1));
  Spectrum s = eigenvalues(M, false);
  DistributionFunction N = DistributionFunction::fromSpectrum(s, 2.0);
  REQUIRE(N.jumpPoints().size() == 1);  // both eigenvalues are exactly 2
  CHECK(N.multiplicities()[0] == 2);
  CHECK(N.valueAt(2.0) == 0.0);   // strict counting: left continuous
  CHECK(N.valueAt(2.0 + 1e-9) == 1.0);

  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    DirichletMatrix A = randomAnderson(10 + static_cast<int>(rng() % 40), rng());
    Spectrum sa = eigenvalues(A, false);
    DistributionFunction Na = DistributionFunction::fromSpectrum(sa, sa.n);
    for (double t : {0.1, 1.0, 7.0}) {
      CHECK(heatTrace(sa, t, sa.n) == Na.laplace(t));  // bitwise identical
    }
  }
}

TEST_CASE("Chebyshev stochastic trace") {
  // diagonal matrix: exact value is the mean of exp(-t V_ii)
  GroupSpec z1 = GroupSpec::integerLattice(1, 1 << 15);
  GroupElement e1 = lat(z1, 1);
  PeriodicGraph disconnected(z1, 1, {}, {});
  (void)e1;
  CouplingLaw law = CouplingLaw::uniform(0.0, 2.0);
  EnvironmentSample omega = EnvironmentSample::fresh(8, law, z1);
  std::vector<Vertex> verts;
  for (int i = 0; i < 200; ++i) verts.push_back({lat(z1, i), 0});
  DirichletMatrix D = assembleDirichlet(disconnected, VertexSet(verts), omega,
                                        SingleSitePotential::unitMass(z1), 1);
  double exact = 0.0;
  for (const Vertex& v : verts) {
    exact += std::exp(-1.0 * potentialValue(omega, SingleSitePotential::unitMass(z1), v));
  }
  exact /= 200.0;
  ChebyshevTraceResult r = chebyshevHeatTrace(D, 1.0, 32, 48, 7);
  CHECK(r.truncationOk);
  CHECK(std::abs(r.value - exact) <= std::max(4.0 * r.stdError, 1e-6));

  // t = 0 short-circuits to exactly 1
  CHECK(chebyshevHeatTrace(D, 0.0, 4, 8, 1).value == 1.0);

  // dense comparison on a path graph
  DirichletMatrix P = freeInterval(400, /*denseLimit=*/1);
  Spectrum ps = eigenvalues(freeInterval(400), false);
  double dense = heatTrace(ps, 1.0, 400.0);
  ChebyshevTraceResult pr = chebyshevHeatTrace(P, 1.0, 32, 64, 11);
  CHECK(pr.truncationOk);
  CHECK(std::abs(pr.value - dense) <= 5.0 * std::max(pr.stdError, 1e-8));

  // starving the expansion flags truncation
  CHECK_FALSE(chebyshevHeatTrace(P, 5.0, 4, 2, 1).truncationOk);
}

TEST_CASE("solver rejects empty input") {
  CHECK_THROWS(eigenvaluesDense({}, 0, false));
}
