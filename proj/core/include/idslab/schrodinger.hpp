#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "idslab/graph.hpp"
#include "idslab/random_env.hpp"

namespace idslab {

/// Dirichlet restriction H^omega_D of H = Delta + V^omega to a finite
/// vertex set: ambient degree plus potential on the diagonal, -1 on
/// off-diagonals for ambient edges inside D.  Restricting the quadratic
/// form (rather than taking the subgraph Laplacian) keeps heat-kernel
/// domain monotonicity valid in the discrete model.
///
/// Dense storage up to a size budget, CSR above it (only the matvec
/// paths work on sparse matrices).
class DirichletMatrix {
 public:
  int dimension() const { return n_; }
  bool isDense() const { return !dense_.empty(); }
  const VertexSet& domain() const { return domain_; }
  int maxAmbientDegree() const { return maxAmbientDegree_; }

  double entry(int i, int j) const;  // dense only

  /// y = M x for either storage.
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Gershgorin bounds on the spectrum.
  std::pair<double, double> gershgorinBounds() const;

  /// Copy of the dense matrix, row-major.
  std::vector<double> denseCopy() const;

  /// Text triplet dump "i j value" of the nonzero entries.
  void writeTriplets(std::ostream& os) const;

  friend DirichletMatrix assembleDirichlet(const PeriodicGraph& graph,
                                           const VertexSet& D,
                                           const EnvironmentSample& omega,
                                           const SingleSitePotential& u,
                                           int denseLimit);

 private:
  int n_ = 0;
  VertexSet domain_;
  int maxAmbientDegree_ = 0;
  std::vector<double> dense_;  // row-major, n_*n_, empty when sparse
  // CSR storage (used when n_ > denseLimit)
  std::vector<int> rowPtr_;
  std::vector<int> colIdx_;
  std::vector<double> values_;
};

DirichletMatrix assembleDirichlet(const PeriodicGraph& graph, const VertexSet& D,
                                  const EnvironmentSample& omega,
                                  const SingleSitePotential& u,
                                  int denseLimit = 4096);

/// Diagonal of the free heat kernel on the standard Z^d lattice:
/// k(t,x,x) = (e^{-2t} I0(2t))^d with I0 summed by its power series
/// (asymptotic branch for very large arguments).  Analytic oracle for
/// the upper-bound and boundary-insensitivity checks.
double freeHeatDiagonal(double t, int d);

}  // namespace idslab
