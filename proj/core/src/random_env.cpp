#include "idslab/random_env.hpp"

#include <cmath>
#include <stdexcept>

namespace idslab {

CouplingLaw CouplingLaw::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("CouplingLaw::uniform: need a < b");
  CouplingLaw law;
  law.kind = Kind::Uniform;
  law.a = a;
  law.b = b;
  return law;
}

CouplingLaw CouplingLaw::bernoulli(double p, double low, double high) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("CouplingLaw::bernoulli: bad p");
  CouplingLaw law;
  law.kind = Kind::Bernoulli;
  law.p = p;
  law.valueLow = low;
  law.valueHigh = high;
  return law;
}

CouplingLaw CouplingLaw::discrete(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) throw std::invalid_argument("CouplingLaw::discrete: no atoms");
  double total = 0.0;
  for (const auto& [value, prob] : atoms) {
    (void)value;
    if (prob < 0.0) throw std::invalid_argument("CouplingLaw::discrete: negative probability");
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("CouplingLaw::discrete: probabilities must sum to 1");
  }
  CouplingLaw law;
  law.kind = Kind::Discrete;
  law.atoms = std::move(atoms);
  return law;
}

double CouplingLaw::quantile(double u) const {
  switch (kind) {
    case Kind::Uniform:
      return a + (b - a) * u;
    case Kind::Bernoulli:
      return u < p ? valueHigh : valueLow;
    case Kind::Discrete: {
      double cum = 0.0;
      for (const auto& [value, prob] : atoms) {
        cum += prob;
        if (u < cum) return value;
      }
      return atoms.back().first;
    }
  }
  return 0.0;
}

double CouplingLaw::maxAbsValue() const {
  switch (kind) {
    case Kind::Uniform:
      return std::max(std::abs(a), std::abs(b));
    case Kind::Bernoulli:
      return std::max(std::abs(valueLow), std::abs(valueHigh));
    case Kind::Discrete: {
      double best = 0.0;
      for (const auto& [value, prob] : atoms) {
        (void)prob;
        best = std::max(best, std::abs(value));
      }
      return best;
    }
  }
  return 0.0;
}

double CouplingLaw::mean() const {
  switch (kind) {
    case Kind::Uniform:
      return 0.5 * (a + b);
    case Kind::Bernoulli:
      return p * valueHigh + (1.0 - p) * valueLow;
    case Kind::Discrete: {
      double m = 0.0;
      for (const auto& [value, prob] : atoms) m += value * prob;
      return m;
    }
  }
  return 0.0;
}

SingleSitePotential SingleSitePotential::unitMass(const GroupSpec& spec, int fiber) {
  SingleSitePotential u;
  u.support.push_back({spec.identity(), fiber, 1.0});
  return u;
}

double SingleSitePotential::sumAbsValues() const {
  double s = 0.0;
  for (const Entry& e : support) s += std::abs(e.value);
  return s;
}

EnvironmentSample EnvironmentSample::fresh(std::uint64_t seed, CouplingLaw law,
                                           const GroupSpec& spec) {
  EnvironmentSample omega;
  omega.seed = seed;
  omega.law = std::move(law);
  omega.baseShift = spec.identity();
  return omega;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double coupling(const EnvironmentSample& omega, const GroupElement& gamma) {
  const GroupElement site = multiply(omega.baseShift, gamma);
  std::uint64_t h = mix64(omega.seed ^ 0x6a09e667f3bcc908ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(site.family == GroupFamily::Heisenberg3));
  h = mix64(h ^ static_cast<std::uint64_t>(site.dim));
  for (int i = 0; i < 3; ++i) {
    h = mix64(h ^ static_cast<std::uint64_t>(site.c[i]));
  }
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return omega.law.quantile(u);
}

EnvironmentSample shift(const EnvironmentSample& omega, const GroupElement& gamma) {
  EnvironmentSample out = omega;
  out.baseShift = multiply(omega.baseShift, inverse(gamma));
  return out;
}

double potentialValue(const EnvironmentSample& omega,
                      const SingleSitePotential& u, const Vertex& x) {
  double v = 0.0;
  for (const SingleSitePotential::Entry& e : u.support) {
    if (e.fiber != x.fiber) continue;
    // gamma^{-1} x = offset  <=>  gamma = x.g * offset^{-1}
    const GroupElement gamma = multiply(x.g, inverse(e.offset));
    v += coupling(omega, gamma) * e.value;
  }
  return v;
}

double uniformBound(const CouplingLaw& law, const SingleSitePotential& u) {
  return law.maxAbsValue() * u.sumAbsValues();
}

}  // namespace idslab
