#include "slra/manifold.hpp"

#include <cmath>
#include <string>

#include "slra/detail/eigen_interop.hpp"

namespace slra {

GapTooSmall::GapTooSmall(double sr, double sr1, double tol)
    : std::runtime_error("rank projection ill conditioned: sigma_r = " +
                         std::to_string(sr) + ", sigma_r+1 = " +
                         std::to_string(sr1) + ", required gap > " +
                         std::to_string(tol)),
      sigma_r(sr),
      sigma_r_plus_1(sr1) {}

RankProjection RankProjection::compute(const DenseMatrix& m, int target_rank,
                                       double gap_tol) {
  return from_svd(svd(m), target_rank, gap_tol);
}

RankProjection RankProjection::from_svd(SvdFactors factors, int target_rank,
                                        double gap_tol) {
  const int p = factors.u.rows();
  const int q = factors.v.rows();
  if (target_rank < 1 || target_rank >= std::min(p, q))
    throw std::invalid_argument("RankProjection: need 1 <= r < min(p, q)");
  if (factors.u.cols() != p || factors.v.cols() != q ||
      factors.sigma.size() != static_cast<size_t>(std::min(p, q)))
    throw std::invalid_argument("RankProjection: factors are not a full SVD");

  const double sr = factors.sigma[target_rank - 1];
  const double sr1 = factors.sigma[target_rank];
  const double threshold = gap_tol * factors.sigma[0];
  if (!(sr - sr1 > threshold)) throw GapTooSmall(sr, sr1, threshold);

  RankProjection proj;
  proj.rank_ = target_rank;
  proj.u_ = std::move(factors.u);
  proj.v_ = std::move(factors.v);
  proj.sigma_ = std::move(factors.sigma);

  auto eu = detail::as_eigen(proj.u_);
  auto ev = detail::as_eigen(proj.v_);
  Eigen::Map<const Eigen::VectorXd> es(proj.sigma_.data(), proj.sigma_.size());
  proj.truncated_ = detail::from_eigen(
      eu.leftCols(target_rank) *
      es.head(target_rank).asDiagonal() *
      ev.leftCols(target_rank).transpose());

  double tail = 0.0;
  for (size_t i = target_rank; i < proj.sigma_.size(); ++i)
    tail += proj.sigma_[i] * proj.sigma_[i];
  proj.distance_ = std::sqrt(tail);
  return proj;
}

std::vector<double> RankProjection::normal_inner(const DenseMatrix& x) const {
  if (x.rows() != rows() || x.cols() != cols())
    throw std::invalid_argument("normal_inner: shape mismatch");
  const int p = rows(), q = cols(), r = rank_;
  // <u~_i v~_j^T, x> = u~_i^T x v~_j: one corner of U^T x V.
  auto eu = detail::as_eigen(u_);
  auto ev = detail::as_eigen(v_);
  Eigen::MatrixXd corner = eu.rightCols(p - r).transpose() *
                           detail::as_eigen(x) * ev.rightCols(q - r);
  std::vector<double> out(static_cast<size_t>(normal_dim()));
  for (int i = 0; i < p - r; ++i)
    for (int j = 0; j < q - r; ++j) out[i * (q - r) + j] = corner(i, j);
  return out;
}

std::vector<double> RankProjection::tangent_inner(const DenseMatrix& x) const {
  if (x.rows() != rows() || x.cols() != cols())
    throw std::invalid_argument("tangent_inner: shape mismatch");
  const int p = rows(), q = cols(), r = rank_;
  auto eu = detail::as_eigen(u_);
  auto ev = detail::as_eigen(v_);
  Eigen::MatrixXd full = eu.transpose() * detail::as_eigen(x) * ev;
  std::vector<double> out(static_cast<size_t>(tangent_dim()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < q; ++j) out[i * q + j] = full(i, j);
  for (int i = r; i < p; ++i)
    for (int j = 0; j < r; ++j) out[r * q + (i - r) * r + j] = full(i, j);
  return out;
}

DenseMatrix RankProjection::tangent_combine(std::span<const double> coeffs) const {
  if (coeffs.size() != static_cast<size_t>(tangent_dim()))
    throw std::invalid_argument("tangent_combine: coefficient count mismatch");
  const int p = rows(), q = cols(), r = rank_;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p, q);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < q; ++j) c(i, j) = coeffs[i * q + j];
  for (int i = r; i < p; ++i)
    for (int j = 0; j < r; ++j) c(i, j) = coeffs[r * q + (i - r) * r + j];
  auto eu = detail::as_eigen(u_);
  auto ev = detail::as_eigen(v_);
  return detail::from_eigen(eu * c * ev.transpose());
}

}  // namespace slra
