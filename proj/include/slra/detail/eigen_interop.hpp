#pragma once

// Internal bridge between DenseMatrix (row-major, owning) and Eigen views.
// Not part of the public surface; include only from .cpp files and tests.

#include <Eigen/Dense>

#include "slra/dense_matrix.hpp"

namespace slra::detail {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Map<const RowMajorMatrix> as_eigen(const DenseMatrix& m) {
  return {m.data(), m.rows(), m.cols()};
}

inline Eigen::Map<RowMajorMatrix> as_eigen(DenseMatrix& m) {
  return {m.data(), m.rows(), m.cols()};
}

inline DenseMatrix from_eigen(const Eigen::Ref<const RowMajorMatrix>& e) {
  DenseMatrix m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  as_eigen(m) = e;
  return m;
}

}  // namespace slra::detail
