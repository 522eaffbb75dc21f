#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "slra/dense_matrix.hpp"

namespace slra {

/// Full singular value decomposition m = u * diag(sigma) * v^T with
/// u (p x p) and v (q x q) orthogonal and sigma of length min(p, q),
/// non-increasing. Both null spaces are therefore available as trailing
/// columns, which the rank manifold layer depends on.
struct SvdFactors {
  DenseMatrix u;
  std::vector<double> sigma;
  DenseMatrix v;
};

class SvdError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Full SVD of a finite matrix. Throws SvdError if the backend fails to
/// converge and std::invalid_argument on an empty matrix.
SvdFactors svd(const DenseMatrix& m);

/// Minimum-norm least-squares solution of a x = b: among all minimizers of
/// |a x - b| returns the one of smallest Euclidean norm (the pseudoinverse
/// applied to b, computed through an SVD rather than by forming a^+).
/// Singular values below rank_tol * sigma_max are treated as zero;
/// rank_tol <= 0 selects the default max(a.rows(), a.cols()) * machine_eps.
std::vector<double> min_norm_solve(const DenseMatrix& a,
                                   std::span<const double> b,
                                   double rank_tol = 0.0);

/// Modified Gram-Schmidt with one reorthogonalization pass over a family of
/// matrices under the Frobenius inner product. Inputs whose residual after
/// projection falls below drop_tol * (largest input norm) are dropped, so the
/// output is an orthonormal basis of the span. Order of survivors follows
/// input order.
std::vector<DenseMatrix> gram_schmidt(const std::vector<DenseMatrix>& family,
                                      double drop_tol = 1e-10);

}  // namespace slra
