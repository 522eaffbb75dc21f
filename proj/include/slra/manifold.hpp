#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "slra/dense_matrix.hpp"
#include "slra/linalg.hpp"

namespace slra {

/// Thrown when sigma_r and sigma_{r+1} are too close for the rank-r
/// truncation to be well defined (the nearest rank-r matrix is not unique
/// at a multiple singular value, so no projection should be reported).
class GapTooSmall : public std::runtime_error {
public:
  GapTooSmall(double sigma_r, double sigma_r_plus_1, double tol);
  double sigma_r;
  double sigma_r_plus_1;
};

/// Best rank-r approximation of a matrix m (Eckart-Young truncation of its
/// SVD) together with the geometry of the determinantal variety at that
/// point: inner products against the normal-space basis
///     N_(i,j) = u~_i v~_j^T   (u~, v~ trailing singular vectors)
/// and the tangent-space family
///     T_(i,j) = u_i v_j^T     (i < r or j < r, leading vectors)
/// evaluated as bilinear forms u^T x v, never as materialized rank-one
/// matrices.
///
/// Index conventions (0-based) used by normal_inner / tangent_inner /
/// tangent_combine:
///   normal:  (i, j), i in [0, p-r), j in [0, q-r)  ->  i*(q-r) + j
///   tangent: first block i in [0, r), j in [0, q)  ->  i*q + j
///            then  block i in [r, p), j in [0, r)  ->  r*q + (i-r)*r + j
class RankProjection {
public:
  /// Default relative spectral-gap threshold: the truncation is accepted
  /// only if sigma_r - sigma_{r+1} > gap_tol * sigma_1.
  static constexpr double kDefaultGapTol = 1e-8;

  /// Projects m onto the set of matrices of rank <= r. Requires
  /// 1 <= r < min(p, q); throws GapTooSmall when the spectral gap test
  /// fails (including rank(m) actually below r, where sigma_r = sigma_{r+1}
  /// = 0 makes the nearest-point map ill posed in the normal directions).
  static RankProjection compute(const DenseMatrix& m, int target_rank,
                                double gap_tol = kDefaultGapTol);

  /// Same, from an externally computed full SVD (used by tests to feed
  /// sign-flipped factors; the projection must not depend on those signs).
  static RankProjection from_svd(SvdFactors factors, int target_rank,
                                 double gap_tol = kDefaultGapTol);

  int rows() const noexcept { return u_.rows(); }
  int cols() const noexcept { return v_.rows(); }
  int target_rank() const noexcept { return rank_; }
  int normal_dim() const noexcept { return (rows() - rank_) * (cols() - rank_); }
  int tangent_dim() const noexcept {
    return (rows() + cols() - rank_) * rank_;
  }

  /// U_r diag(sigma_1..r) V_r^T.
  const DenseMatrix& truncated() const noexcept { return truncated_; }
  const std::vector<double>& sigma() const noexcept { return sigma_; }
  double spectral_gap() const noexcept { return sigma_[rank_ - 1] - sigma_[rank_]; }
  /// Frobenius distance from the input to its truncation:
  /// sqrt(sum of squared discarded singular values).
  double distance() const noexcept { return distance_; }

  /// Full orthogonal factors (p x p and q x q, row-major).
  const DenseMatrix& u() const noexcept { return u_; }
  const DenseMatrix& v() const noexcept { return v_; }

  /// <N_k, x> for every normal basis element, in the order above.
  std::vector<double> normal_inner(const DenseMatrix& x) const;

  /// <T_l, x> for every tangent family element, in the order above.
  std::vector<double> tangent_inner(const DenseMatrix& x) const;

  /// sum_l coeffs[l] * T_l, as a dense matrix.
  DenseMatrix tangent_combine(std::span<const double> coeffs) const;

private:
  RankProjection() = default;

  int rank_ = 0;
  DenseMatrix u_;
  DenseMatrix v_;
  std::vector<double> sigma_;
  DenseMatrix truncated_;
  double distance_ = 0.0;
};

/// Convenience spelling of RankProjection::compute.
inline RankProjection project_rank(const DenseMatrix& m, int target_rank,
                                   double gap_tol = RankProjection::kDefaultGapTol) {
  return RankProjection::compute(m, target_rank, gap_tol);
}

}  // namespace slra
