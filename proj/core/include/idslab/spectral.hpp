#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "idslab/schrodinger.hpp"

namespace idslab {

/// Raised when the QL iteration fails to converge within the sweep cap.
struct SolverError : std::runtime_error {
  int eigenvalueIndex;
  explicit SolverError(int index)
      : std::runtime_error("eigensolver: QL iteration did not converge"),
        eigenvalueIndex(index) {}
};

/// Full spectrum of a symmetric matrix, eigenvalues ascending.
/// When present, vectors is row-major n x n with column i holding the
/// normalized eigenvector of eigenvalues[i].
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> vectors;  // empty unless requested
  int n = 0;

  double vectorComponent(int row, int i) const {
    return vectors[static_cast<std::size_t>(row) * n + i];
  }
};

/// Householder tridiagonalization followed by implicit-shift QL with
/// Wilkinson shifts.  Matrices that are already tridiagonal in the
/// domain ordering skip the reduction step.
Spectrum eigenvalues(const DirichletMatrix& M, bool wantVectors);

/// Same solver on a raw dense symmetric matrix (row-major).
Spectrum eigenvaluesDense(std::vector<double> matrix, int n, bool wantVectors);

struct CountResult {
  int count = 0;          // #{ i : lambda_i < lambda }, strict
  double normalized = 0;  // count / volume
};

CountResult countBelow(const Spectrum& s, double lambda, double volume);

struct SturmResult {
  int count = 0;
  bool jittered = false;   // lambda hit an exact pivot and was perturbed
  double lambdaUsed = 0.0;
};

/// Independent eigenvalue-counting oracle: Sturm sign count on the
/// tridiagonalized matrix.
SturmResult sturmCount(const DirichletMatrix& M, double lambda);

/// (1/volume) sum_i exp(-t lambda_i), summed in ascending order.
double heatTrace(const Spectrum& s, double t, double volume);

/// k_D(t,x,x) = sum_i exp(-t lambda_i) v_i(x)^2; requires vectors.
double heatKernelDiagonal(const Spectrum& s, double t, int x);

/// Left-continuous eigenvalue counting function: evaluation at lambda
/// counts strictly below.  Jump points group bitwise-equal eigenvalues.
class DistributionFunction {
 public:
  static DistributionFunction fromSpectrum(const Spectrum& s, double volume);

  double valueAt(double lambda) const;

  /// Stieltjes integral of exp(-t lambda) dN; reproduces heatTrace of
  /// the generating spectrum bit-for-bit (same sum, same order).
  double laplace(double t) const;

  const std::vector<double>& jumpPoints() const { return jumpPoints_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }
  double volume() const { return volume_; }

 private:
  std::vector<double> jumpPoints_;
  std::vector<int> multiplicities_;
  std::vector<int> cumulative_;
  double volume_ = 1.0;
};

struct ChebyshevTraceResult {
  double value = 0.0;       // normalized trace estimate
  double stdError = 0.0;
  bool truncationOk = true;
  double tailBound = 0.0;   // magnitude of the trailing coefficients
};

/// Stochastic (Hutchinson) estimate of (1/n) Tr exp(-tM) with a
/// Chebyshev expansion over the Gershgorin interval.
ChebyshevTraceResult chebyshevHeatTrace(const DirichletMatrix& M, double t,
                                        int probes, int degree,
                                        std::uint64_t seed,
                                        double truncationTol = 1e-8);

}  // namespace idslab
