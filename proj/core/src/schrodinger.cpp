#include "idslab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idslab {

double DirichletMatrix::entry(int i, int j) const {
  if (!isDense()) throw std::logic_error("DirichletMatrix::entry: sparse storage");
  return dense_[static_cast<std::size_t>(i) * n_ + j];
}

void DirichletMatrix::apply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("DirichletMatrix::apply: size mismatch");
  }
  if (isDense()) {
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      const double* row = dense_.data() + static_cast<std::size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int k = rowPtr_[i]; k < rowPtr_[i + 1]; ++k) s += values_[k] * x[colIdx_[k]];
      y[i] = s;
    }
  }
}

std::pair<double, double> DirichletMatrix::gershgorinBounds() const {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  auto account = [&](double diag, double offAbsSum) {
    if (first) {
      lo = diag - offAbsSum;
      hi = diag + offAbsSum;
      first = false;
    } else {
      lo = std::min(lo, diag - offAbsSum);
      hi = std::max(hi, diag + offAbsSum);
    }
  };
  if (isDense()) {
    for (int i = 0; i < n_; ++i) {
      double diag = entry(i, i), off = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (j != i) off += std::abs(entry(i, j));
      }
      account(diag, off);
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      double diag = 0.0, off = 0.0;
      for (int k = rowPtr_[i]; k < rowPtr_[i + 1]; ++k) {
        if (colIdx_[k] == i) {
          diag = values_[k];
        } else {
          off += std::abs(values_[k]);
        }
      }
      account(diag, off);
    }
  }
  return {lo, hi};
}

std::vector<double> DirichletMatrix::denseCopy() const {
  if (isDense()) return dense_;
  std::vector<double> out(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int k = rowPtr_[i]; k < rowPtr_[i + 1]; ++k) {
      out[static_cast<std::size_t>(i) * n_ + colIdx_[k]] = values_[k];
    }
  }
  return out;
}

void DirichletMatrix::writeTriplets(std::ostream& os) const {
  if (isDense()) {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        double v = entry(i, j);
        if (v != 0.0) os << i << ' ' << j << ' ' << v << '\n';
      }
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      for (int k = rowPtr_[i]; k < rowPtr_[i + 1]; ++k) {
        os << i << ' ' << colIdx_[k] << ' ' << values_[k] << '\n';
      }
    }
  }
}

DirichletMatrix assembleDirichlet(const PeriodicGraph& graph, const VertexSet& D,
                                  const EnvironmentSample& omega,
                                  const SingleSitePotential& u, int denseLimit) {
  if (D.empty()) throw std::invalid_argument("assembleDirichlet: empty domain");
  DirichletMatrix M;
  M.n_ = static_cast<int>(D.size());
  M.domain_ = D;
  const auto& verts = D.vertices();
  auto indexOf = [&](const Vertex& v) -> int {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || !(*it == v)) return -1;
    return static_cast<int>(it - verts.begin());
  };
  const bool dense = M.n_ <= denseLimit;
  if (dense) M.dense_.assign(static_cast<std::size_t>(M.n_) * M.n_, 0.0);
  M.rowPtr_.assign(M.n_ + 1, 0);
  for (int i = 0; i < M.n_; ++i) {
    const Vertex& v = verts[i];
    auto nb = graph.neighbors(v);
    const int deg = static_cast<int>(nb.size());
    M.maxAmbientDegree_ = std::max(M.maxAmbientDegree_, deg);
    const double diag = deg + potentialValue(omega, u, v);
    if (dense) {
      M.dense_[static_cast<std::size_t>(i) * M.n_ + i] = diag;
      for (const Vertex& w : nb) {
        int j = indexOf(w);
        if (j >= 0) M.dense_[static_cast<std::size_t>(i) * M.n_ + j] = -1.0;
      }
    } else {
      // CSR rows built in sorted column order (diag inserted in place).
      std::vector<std::pair<int, double>> row;
      row.reserve(nb.size() + 1);
      for (const Vertex& w : nb) {
        int j = indexOf(w);
        if (j >= 0) row.push_back({j, -1.0});
      }
      row.push_back({i, diag});
      std::sort(row.begin(), row.end());
      for (const auto& [j, val] : row) {
        M.colIdx_.push_back(j);
        M.values_.push_back(val);
      }
      M.rowPtr_[i + 1] = static_cast<int>(M.colIdx_.size());
    }
  }
  if (dense) {
    M.rowPtr_.clear();
  }
  return M;
}

namespace {

// e^{-x} I0(x) by the power series of I0, scaled afterwards; the
// uniform asymptotic expansion takes over once e^x would overflow.
double scaledBesselI0(double x) {
  if (x == 0.0) return 1.0;
  if (x < 600.0) {
    double term = 1.0, sum = 1.0;
    const double q = x * 0.5;
    for (int k = 1; k < 4000; ++k) {
      term *= (q / k) * (q / k);
      sum += term;
      if (term < sum * 1e-18) break;
    }
    return std::exp(-x) * sum;
  }
  const double ix = 1.0 / x;
  return (1.0 + 0.125 * ix + (9.0 / 128.0) * ix * ix +
          (225.0 / 3072.0) * ix * ix * ix) /
         std::sqrt(2.0 * M_PI * x);
}

}  // namespace

double freeHeatDiagonal(double t, int d) {
  if (t <= 0.0) throw std::invalid_argument("freeHeatDiagonal: t must be > 0");
  if (d < 1) throw std::invalid_argument("freeHeatDiagonal: d must be >= 1");
  const double one = scaledBesselI0(2.0 * t);
  double out = 1.0;
  for (int i = 0; i < d; ++i) out *= one;
  return out;
}

}  // namespace idslab
