#pragma once

#include <memory>
#include <vector>

#include "slra/dense_matrix.hpp"
#include "slra/kernels.hpp"

namespace slra {

/// An affine subspace E = base + span(basis) of p x q matrices, with the
/// basis orthonormal under the Frobenius inner product. Immutable after
/// construction: copies share the underlying data, and the lazily built
/// orthonormal complement of the direction space is memoized behind the
/// shared state, so concurrent readers are safe.
class AffineStructure {
public:
  /// Builds the structure from an arbitrary spanning family. The family is
  /// orthonormalized (dropping dependent members); throws
  /// std::invalid_argument when nothing survives (d = 0), when the family
  /// spans everything (d = p*q leaves no complement), or on shape mismatch.
  static AffineStructure from_generators(DenseMatrix base,
                                         const std::vector<DenseMatrix>& generators,
                                         double drop_tol = 1e-10);

  /// Builds the structure from a family that is already orthonormal (checked:
  /// unit norms and pairwise orthogonality over shared support within 1e-8).
  /// An empty basis is allowed here and describes the degenerate single-point
  /// structure E = {base} used for fully observed coordinate masks. A
  /// complement family may be supplied when the caller knows it cheaply
  /// (e.g. coordinate structures); otherwise it is completed lazily.
  static AffineStructure from_orthonormal_basis(
      DenseMatrix base, std::vector<DenseMatrix> basis,
      std::vector<DenseMatrix> complement = {});

  int rows() const noexcept;
  int cols() const noexcept;
  int ambient_dim() const noexcept { return rows() * cols(); }
  /// Dimension d of the direction space.
  int dim() const noexcept;

  const DenseMatrix& base() const noexcept;
  const std::vector<DenseMatrix>& basis() const noexcept;

  /// Orthonormal basis of the orthogonal complement of the direction space
  /// (p*q - d elements). Built on first use by completing the basis with
  /// coordinate matrices, then cached; single-entry families short-circuit
  /// to the untouched coordinate matrices.
  const std::vector<DenseMatrix>& complement() const;

  /// Orthogonal projection of x onto E.
  DenseMatrix project_onto(const DenseMatrix& x,
                           kernels::Exec exec = kernels::Exec::parallel) const;

  /// |x - project_onto(x)|, i.e. the Frobenius distance from x to E.
  double membership_residual(const DenseMatrix& x) const;

  const kernels::BasisView& basis_view() const noexcept;
  const kernels::BasisView& complement_view() const;

private:
  struct Core;
  explicit AffineStructure(std::shared_ptr<const Core> core)
      : core_(std::move(core)) {}

  std::shared_ptr<const Core> core_;
};

}  // namespace slra
