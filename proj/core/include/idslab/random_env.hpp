#pragma once

#include <cstdint>
#include <vector>

#include "idslab/graph.hpp"
#include "idslab/group.hpp"

namespace idslab {

/// Distribution of a single i.i.d. coupling constant.  Support must be
/// bounded so that a uniform potential bound C_0 exists.
struct CouplingLaw {
  enum class Kind { Uniform, Bernoulli, Discrete };

  Kind kind = Kind::Uniform;
  double a = 0.0, b = 1.0;                         // Uniform(a, b)
  double p = 0.5;                                  // Bernoulli success prob
  double valueLow = 0.0, valueHigh = 1.0;          // Bernoulli outcomes
  std::vector<std::pair<double, double>> atoms;    // Discrete (value, prob)

  static CouplingLaw uniform(double a, double b);
  static CouplingLaw bernoulli(double p, double low, double high);
  static CouplingLaw discrete(std::vector<std::pair<double, double>> atoms);

  /// Inverse-CDF sample from u in [0,1).
  double quantile(double u) const;

  double maxAbsValue() const;
  double mean() const;
};

/// Finitely supported single-site profile u: entries (offset, fiber, value).
struct SingleSitePotential {
  struct Entry {
    GroupElement offset;
    int fiber = 0;
    double value = 0.0;
  };
  std::vector<Entry> support;

  static SingleSitePotential unitMass(const GroupSpec& spec, int fiber = 0);
  double sumAbsValues() const;
};

/// One realization omega of the i.i.d. coupling field.  Couplings are
/// generated counter-style: each site's value is a pure function of
/// (seed, baseShift * gamma), so the shift action is an exact relabeling
/// and the compatibility identity holds bit-for-bit.  The mixing
/// function is a 64-bit finalizer (not cryptographic).
struct EnvironmentSample {
  std::uint64_t seed = 0;
  CouplingLaw law;
  GroupElement baseShift;  // identity for fresh samples

  static EnvironmentSample fresh(std::uint64_t seed, CouplingLaw law,
                                 const GroupSpec& spec);
};

/// omega_gamma: deterministic, independent of evaluation order.
double coupling(const EnvironmentSample& omega, const GroupElement& gamma);

/// T_gamma omega, realized by composing the base shift.
EnvironmentSample shift(const EnvironmentSample& omega, const GroupElement& gamma);

/// V^omega(x) = sum_gamma omega_gamma u(gamma^{-1} x), summed over the
/// finitely many translates whose support touches x, in fixed entry order.
double potentialValue(const EnvironmentSample& omega,
                      const SingleSitePotential& u, const Vertex& x);

/// C_0 = max|coupling| * sum|u values|, a uniform bound on ||V^omega||_inf.
double uniformBound(const CouplingLaw& law, const SingleSitePotential& u);

/// 64-bit mixing function used for the coupling field (exposed for the
/// avalanche property test).
std::uint64_t mix64(std::uint64_t x);

}  // namespace idslab
