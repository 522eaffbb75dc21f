#include "slra/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace slra {

namespace {

void check_shape(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("DenseMatrix: dimensions must be positive");
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check_shape(rows, cols);
  entries_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_shape(rows, cols);
  if (entries_.size() != static_cast<size_t>(rows) * cols)
    throw std::invalid_argument("DenseMatrix: entry count " +
                                std::to_string(entries_.size()) +
                                " does not match shape " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  for (double e : entries_)
    if (!std::isfinite(e))
      throw std::invalid_argument("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (!same_shape(other))
    throw std::invalid_argument("DenseMatrix: shape mismatch in +=");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (!same_shape(other))
    throw std::invalid_argument("DenseMatrix: shape mismatch in -=");
  for (size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& e : entries_) e *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("frobenius_inner: shape mismatch");
  const double* pa = a.data();
  const double* pb = b.data();
  double acc = 0.0;
  for (int k = 0; k < a.size(); ++k) acc += pa[k] * pb[k];
  return acc;
}

double frobenius_norm(const DenseMatrix& a) {
  double acc = 0.0;
  for (double e : a.entries()) acc += e * e;
  return std::sqrt(acc);
}

double rank_one_inner(std::span<const double> u, std::span<const double> v,
                      const DenseMatrix& x) {
  if (u.size() != static_cast<size_t>(x.rows()) ||
      v.size() != static_cast<size_t>(x.cols()))
    throw std::invalid_argument("rank_one_inner: vector length mismatch");
  // u^T x v, row by row so x is traversed once.
  double acc = 0.0;
  for (int i = 0; i < x.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < x.cols(); ++j) row += x(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

}  // namespace slra
