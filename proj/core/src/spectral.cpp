#include "idslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace idslab {

namespace {

double pythag(double a, double b) {
  double absa = std::abs(a), absb = std::abs(b);
  if (absa > absb) {
    double q = absb / absa;
    return absa * std::sqrt(1.0 + q * q);
  }
  if (absb == 0.0) return 0.0;
  double q = absa / absb;
  return absb * std::sqrt(1.0 + q * q);
}

double signLike(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Householder reduction of the symmetric matrix in z (row-major) to
// tridiagonal form d/e.  When accumulate is set, z ends up holding the
// orthogonal transformation.
void householderTridiagonalize(std::vector<double>& z, int n,
                               std::vector<double>& d, std::vector<double>& e,
                               bool accumulate) {
  auto at = [&](int i, int j) -> double& {
    return z[static_cast<std::size_t>(i) * n + j];
  };
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k < i; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k < i; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j < i; ++j) {
          if (accumulate) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k < i; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j < i; ++j) {
          f = at(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }
  if (accumulate) d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (accumulate) {
      if (d[i] != 0.0) {
        for (int j = 0; j < i; ++j) {
          double g = 0.0;
          for (int k = 0; k < i; ++k) g += at(i, k) * at(k, j);
          for (int k = 0; k < i; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (int j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit-shift QL with Wilkinson shifts on a tridiagonal matrix.
// z (if non-null) accumulates rotations; 30-sweep cap per eigenvalue.
void qlImplicit(std::vector<double>& d, std::vector<double>& e, int n,
                std::vector<double>* z) {
  constexpr int kMaxSweeps = 30;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps) throw SolverError(l);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + signLike(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (int k = 0; k < n; ++k) {
              double fk = (*z)[static_cast<std::size_t>(k) * n + i + 1];
              (*z)[static_cast<std::size_t>(k) * n + i + 1] =
                  s * (*z)[static_cast<std::size_t>(k) * n + i] + c * fk;
              (*z)[static_cast<std::size_t>(k) * n + i] =
                  c * (*z)[static_cast<std::size_t>(k) * n + i] - s * fk;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void sortSpectrum(Spectrum& s) {
  std::vector<int> order(s.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return s.eigenvalues[a] < s.eigenvalues[b];
  });
  std::vector<double> ev(s.n);
  for (int i = 0; i < s.n; ++i) ev[i] = s.eigenvalues[order[i]];
  s.eigenvalues = std::move(ev);
  if (!s.vectors.empty()) {
    std::vector<double> vec(s.vectors.size());
    for (int row = 0; row < s.n; ++row) {
      for (int i = 0; i < s.n; ++i) {
        vec[static_cast<std::size_t>(row) * s.n + i] =
            s.vectors[static_cast<std::size_t>(row) * s.n + order[i]];
      }
    }
    s.vectors = std::move(vec);
  }
}

// Extract the tridiagonal of M if its sparsity respects bandwidth 1 in
// the domain ordering; nullopt otherwise.
std::optional<std::pair<std::vector<double>, std::vector<double>>>
tryTridiagonal(const DirichletMatrix& M) {
  const int n = M.dimension();
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (M.isDense()) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (M.entry(i, j) != 0.0) return std::nullopt;
      }
      d[i] = M.entry(i, i);
      if (i > 0) e[i] = M.entry(i, i - 1);
    }
  } else {
    std::vector<double> x(n, 0.0), y(n, 0.0);
    // Probe the CSR structure through matvecs on unit vectors is wasteful;
    // use denseCopy only for small n.  For sparse matrices we walk the
    // matvec of basis vectors lazily via apply on shifted impulses.
    for (int i = 0; i < n; ++i) {
      std::fill(x.begin(), x.end(), 0.0);
      x[i] = 1.0;
      M.apply(x, y);
      for (int j = 0; j < n; ++j) {
        if (std::abs(j - i) > 1 && y[j] != 0.0) return std::nullopt;
      }
      d[i] = y[i];
      if (i > 0) e[i] = y[i - 1];
    }
  }
  return std::make_pair(std::move(d), std::move(e));
}

}  // namespace

Spectrum eigenvaluesDense(std::vector<double> matrix, int n, bool wantVectors) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("eigenvaluesDense: bad dimensions");
  }
  Spectrum s;
  s.n = n;
  std::vector<double> d, e;
  householderTridiagonalize(matrix, n, d, e, wantVectors);
  qlImplicit(d, e, n, wantVectors ? &matrix : nullptr);
  s.eigenvalues = std::move(d);
  if (wantVectors) s.vectors = std::move(matrix);
  sortSpectrum(s);
  return s;
}

Spectrum eigenvalues(const DirichletMatrix& M, bool wantVectors) {
  const int n = M.dimension();
  if (auto tri = tryTridiagonal(M)) {
    Spectrum s;
    s.n = n;
    auto& [d, e] = *tri;
    if (wantVectors) {
      s.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
      for (int i = 0; i < n; ++i) s.vectors[static_cast<std::size_t>(i) * n + i] = 1.0;
      qlImplicit(d, e, n, &s.vectors);
    } else {
      qlImplicit(d, e, n, nullptr);
    }
    s.eigenvalues = std::move(d);
    sortSpectrum(s);
    return s;
  }
  if (!M.isDense()) {
    throw std::logic_error("eigenvalues: matrix exceeds the dense solver budget");
  }
  return eigenvaluesDense(M.denseCopy(), n, wantVectors);
}

CountResult countBelow(const Spectrum& s, double lambda, double volume) {
  CountResult r;
  r.count = static_cast<int>(
      std::lower_bound(s.eigenvalues.begin(), s.eigenvalues.end(), lambda) -
      s.eigenvalues.begin());
  r.normalized = static_cast<double>(r.count) / volume;
  return r;
}

SturmResult sturmCount(const DirichletMatrix& M, double lambda) {
  const int n = M.dimension();
  std::vector<double> d, e;
  if (auto tri = tryTridiagonal(M)) {
    d = std::move(tri->first);
    e = std::move(tri->second);
  } else {
    if (!M.isDense()) throw std::logic_error("sturmCount: matrix exceeds the dense budget");
    std::vector<double> a = M.denseCopy();
    householderTridiagonalize(a, n, d, e, false);
  }
  SturmResult result;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(d[i]));
  double shifted = lambda;
  for (int attempt = 0; attempt < 50; ++attempt) {
    int count = 0;
    double q = d[0] - shifted;
    bool breakdown = q == 0.0;
    if (q < 0.0) ++count;
    for (int i = 1; i < n && !breakdown; ++i) {
      q = (d[i] - shifted) - e[i] * e[i] / q;
      if (q == 0.0) breakdown = true;
      if (q < 0.0) ++count;
    }
    if (!breakdown) {
      result.count = count;
      result.lambdaUsed = shifted;
      return result;
    }
    result.jittered = true;
    shifted = lambda + (attempt + 1) * 8.0 * std::numeric_limits<double>::epsilon() * scale;
  }
  throw std::runtime_error("sturmCount: persistent pivot breakdown");
}

double heatTrace(const Spectrum& s, double t, double volume) {
  if (t <= 0.0) throw std::invalid_argument("heatTrace: t must be > 0");
  double sum = 0.0;
  for (double lambda : s.eigenvalues) sum += std::exp(-t * lambda);
  return sum / volume;
}

double heatKernelDiagonal(const Spectrum& s, double t, int x) {
  if (s.vectors.empty()) throw std::logic_error("heatKernelDiagonal: vectors missing");
  double sum = 0.0;
  for (int i = 0; i < s.n; ++i) {
    const double v = s.vectorComponent(x, i);
    sum += std::exp(-t * s.eigenvalues[i]) * v * v;
  }
  return sum;
}

DistributionFunction DistributionFunction::fromSpectrum(const Spectrum& s,
                                                        double volume) {
  DistributionFunction f;
  f.volume_ = volume;
  for (double lambda : s.eigenvalues) {
    if (!f.jumpPoints_.empty() && f.jumpPoints_.back() == lambda) {
      ++f.multiplicities_.back();
    } else {
      f.jumpPoints_.push_back(lambda);
      f.multiplicities_.push_back(1);
    }
  }
  f.cumulative_.resize(f.jumpPoints_.size());
  int running = 0;
  for (std::size_t i = 0; i < f.jumpPoints_.size(); ++i) {
    running += f.multiplicities_[i];
    f.cumulative_[i] = running;
  }
  return f;
}

double DistributionFunction::valueAt(double lambda) const {
  auto it = std::lower_bound(jumpPoints_.begin(), jumpPoints_.end(), lambda);
  if (it == jumpPoints_.begin()) return 0.0;
  return static_cast<double>(cumulative_[it - jumpPoints_.begin() - 1]) / volume_;
}

double DistributionFunction::laplace(double t) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < jumpPoints_.size(); ++i) {
    for (int k = 0; k < multiplicities_[i]; ++k) sum += std::exp(-t * jumpPoints_[i]);
  }
  return sum / volume_;
}

ChebyshevTraceResult chebyshevHeatTrace(const DirichletMatrix& M, double t,
                                        int probes, int degree,
                                        std::uint64_t seed,
                                        double truncationTol) {
  if (t < 0.0) throw std::invalid_argument("chebyshevHeatTrace: t must be >= 0");
  if (probes < 1 || degree < 0) {
    throw std::invalid_argument("chebyshevHeatTrace: bad probes/degree");
  }
  ChebyshevTraceResult out;
  const int n = M.dimension();
  if (t == 0.0) {  // exp(-0 M) = I: degree-0 polynomial, exact
    out.value = 1.0;
    return out;
  }
  auto [lo, hi] = M.gershgorinBounds();
  if (hi - lo < 1e-12) hi = lo + 1e-12;
  const double center = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);

  const int ncoef = degree + 1;
  std::vector<double> coef(ncoef, 0.0);
  const int quad = std::max(ncoef, 64);
  for (int k = 0; k < ncoef; ++k) {
    double sum = 0.0;
    for (int j = 0; j < quad; ++j) {
      const double theta = M_PI * (j + 0.5) / quad;
      sum += std::exp(-t * (center + half * std::cos(theta))) * std::cos(k * theta);
    }
    coef[k] = (k == 0 ? 1.0 : 2.0) * sum / quad;
  }
  out.tailBound = std::abs(coef[ncoef - 1]);
  if (ncoef >= 2) out.tailBound = std::max(out.tailBound, std::abs(coef[ncoef - 2]));
  out.truncationOk = out.tailBound <= truncationTol;

  std::mt19937_64 rng(seed);
  std::vector<double> samples(probes, 0.0);
  std::vector<double> z(n), w0(n), w1(n), w2(n), tmp(n);
  auto scaledApply = [&](std::span<const double> x, std::span<double> y) {
    M.apply(x, tmp);
    for (int i = 0; i < n; ++i) y[i] = (tmp[i] - center * x[i]) / half;
  };
  for (int pIdx = 0; pIdx < probes; ++pIdx) {
    for (int i = 0; i < n; ++i) z[i] = (rng() & 1u) ? 1.0 : -1.0;
    w0 = z;
    double acc = coef[0] * n;  // z . T_0(A) z = z . z = n for Rademacher z
    if (ncoef > 1) {
      scaledApply(w0, w1);
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += z[i] * w1[i];
      acc += coef[1] * dot;
      for (int k = 2; k < ncoef; ++k) {
        scaledApply(w1, w2);
        for (int i = 0; i < n; ++i) w2[i] = 2.0 * w2[i] - w0[i];
        dot = 0.0;
        for (int i = 0; i < n; ++i) dot += z[i] * w2[i];
        acc += coef[k] * dot;
        w0 = w1;
        w1 = w2;
      }
    }
    samples[pIdx] = acc / n;
  }
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= probes;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var = probes > 1 ? var / (probes - 1) : 0.0;
  out.value = mean;
  out.stdError = std::sqrt(var / probes);
  return out;
}

}  // namespace idslab
