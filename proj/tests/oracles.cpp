#include "oracles.hpp"

#include <Eigen/Dense>

#include "slra/detail/eigen_interop.hpp"

using slra::AffineStructure;
using slra::DenseMatrix;
using slra::RankProjection;

DenseMatrix kkt_projection_oracle(const DenseMatrix& m,
                                  const AffineStructure& structure,
                                  const RankProjection& proj) {
  const int p = m.rows(), q = m.cols(), r = proj.target_rank();
  const int ambient = p * q;
  const int d = structure.dim();
  const int normal_dim = (p - r) * (q - r);

  // Flatten the structure basis into B (ambient x d).
  Eigen::MatrixXd basis(ambient, d);
  for (int l = 0; l < d; ++l)
    for (int e = 0; e < ambient; ++e)
      basis(e, l) = structure.basis()[l].data()[e];

  // Materialize every normal matrix N_(i,j) = u~_i v~_j^T as a dense row.
  Eigen::MatrixXd normals(normal_dim, ambient);
  for (int i = 0; i < p - r; ++i)
    for (int j = 0; j < q - r; ++j)
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b)
          normals(i * (q - r) + j, a * q + b) =
              proj.u()(a, r + i) * proj.v()(b, r + j);

  Eigen::Map<const Eigen::VectorXd> mflat(m.data(), ambient);
  Eigen::Map<const Eigen::VectorXd> base_flat(structure.base().data(), ambient);
  Eigen::Map<const Eigen::VectorXd> trunc_flat(proj.truncated().data(), ambient);

  // In coordinates c (x = base + B c): minimize ||c - c_m|| subject to
  // (N B) c = N (truncated - base). The minimizer perturbs c_m by the
  // pseudoinverse applied to the constraint residual.
  const Eigen::VectorXd cm = basis.transpose() * (mflat - base_flat);
  const Eigen::MatrixXd nb = normals * basis;
  const Eigen::VectorXd rhs = normals * (trunc_flat - base_flat);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(nb);
  const Eigen::VectorXd c = cm + cod.pseudoInverse() * (rhs - nb * cm);

  Eigen::VectorXd xflat = base_flat + basis * c;
  DenseMatrix out(p, q);
  for (int e = 0; e < ambient; ++e) out.data()[e] = xflat[e];
  return out;
}
