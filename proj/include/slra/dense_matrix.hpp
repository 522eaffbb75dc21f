#pragma once

#include <span>
#include <vector>

namespace slra {

/// Dense real matrix, row-major storage. The common carrier between the
/// structure, manifold and solver layers; kept deliberately small (shape,
/// element access, Frobenius geometry) with heavier factorizations living
/// in linalg.hpp.
class DenseMatrix {
public:
  /// Empty placeholder (0x0), the moved-from/not-yet-assigned state. Every
  /// shaped matrix has rows >= 1 and cols >= 1; the sized constructors
  /// enforce that.
  DenseMatrix() = default;

  /// Zero matrix of the given shape.
  DenseMatrix(int rows, int cols);

  /// Takes ownership of row-major entries. Throws std::invalid_argument on a
  /// size mismatch or any non-finite entry, so matrices built from external
  /// data (files, JSON) are validated exactly once at the boundary.
  DenseMatrix(int rows, int cols, std::vector<double> entries);

  static DenseMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int size() const noexcept { return rows_ * cols_; }
  bool same_shape(const DenseMatrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double operator()(int i, int j) const { return entries_[flat(i, j)]; }
  double& operator()(int i, int j) { return entries_[flat(i, j)]; }

  double* data() noexcept { return entries_.data(); }
  const double* data() const noexcept { return entries_.data(); }
  std::span<const double> entries() const noexcept { return entries_; }

  DenseMatrix transposed() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

private:
  int flat(int i, int j) const noexcept { return i * cols_ + j; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

/// <a, b> = sum_ij a_ij * b_ij (the trace inner product).
double frobenius_inner(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& a);

/// <u v^T, x> = u^T x v, evaluated without forming the rank-one matrix.
/// u has x.rows() entries, v has x.cols() entries.
double rank_one_inner(std::span<const double> u, std::span<const double> v,
                      const DenseMatrix& x);

}  // namespace slra
