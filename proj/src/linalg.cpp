#include "slra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slra/detail/eigen_interop.hpp"

namespace slra {

SvdFactors svd(const DenseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("svd: empty matrix");

  // BDCSVD falls back to Jacobi internally for small inputs; full U/V are
  // required because callers consume the trailing (null space) columns.
  Eigen::BDCSVD<Eigen::MatrixXd> dec(detail::as_eigen(m),
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (dec.info() != Eigen::Success)
    throw SvdError("svd: backend failed to converge");

  SvdFactors out;
  out.u = detail::from_eigen(dec.matrixU());
  out.v = detail::from_eigen(dec.matrixV());
  const auto& s = dec.singularValues();
  out.sigma.assign(s.data(), s.data() + s.size());
  return out;
}

std::vector<double> min_norm_solve(const DenseMatrix& a,
                                   std::span<const double> b,
                                   double rank_tol) {
  const int k = a.rows();
  const int n = a.cols();
  if (b.size() != static_cast<size_t>(k))
    throw std::invalid_argument("min_norm_solve: rhs length mismatch");
  if (n == 0) return {};
  if (k == 0) return std::vector<double>(n, 0.0);

  Eigen::BDCSVD<Eigen::MatrixXd> dec(detail::as_eigen(a),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success)
    throw SvdError("min_norm_solve: backend failed to converge");

  if (rank_tol <= 0.0)
    rank_tol = std::max(k, n) * std::numeric_limits<double>::epsilon();

  const auto& s = dec.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;

  // x = V * diag(1/sigma_i on the numerical range) * U^T b. Directions with
  // sigma <= cutoff are annihilated, which is what makes the solution the
  // minimum-norm one when a is rank deficient.
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), k);
  Eigen::VectorXd utb = dec.matrixU().transpose() * bv;
  for (int i = 0; i < s.size(); ++i)
    utb(i) = (s(i) > cutoff && s(i) > 0.0) ? utb(i) / s(i) : 0.0;
  Eigen::VectorXd x = dec.matrixV() * utb;
  return {x.data(), x.data() + x.size()};
}

std::vector<DenseMatrix> gram_schmidt(const std::vector<DenseMatrix>& family,
                                      double drop_tol) {
  std::vector<DenseMatrix> basis;
  if (family.empty()) return basis;

  double max_norm = 0.0;
  for (const auto& f : family) {
    if (!f.same_shape(family.front()))
      throw std::invalid_argument("gram_schmidt: mixed shapes in family");
    max_norm = std::max(max_norm, frobenius_norm(f));
  }
  if (max_norm == 0.0) return basis;
  const double floor = drop_tol * max_norm;

  for (const auto& f : family) {
    DenseMatrix w = f;
    // Two projection sweeps: the second pass cleans up the cancellation a
    // single modified Gram-Schmidt sweep leaves behind for ill-conditioned
    // families ("twice is enough").
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) w -= frobenius_inner(w, u) * u;
    const double norm = frobenius_norm(w);
    if (norm >= floor) {
      w *= 1.0 / norm;
      basis.push_back(std::move(w));
    }
  }
  return basis;
}

}  // namespace slra
