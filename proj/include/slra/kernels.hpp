#pragma once

#include <vector>

#include "slra/dense_matrix.hpp"
#include "slra/manifold.hpp"

namespace slra::kernels {

/// Execution policy for the kernels below. Every kernel has one code path;
/// `parallel` enables the OpenMP pragma over independent output slots and
/// `serial` is the reference loop used by tests and benchmarks. Each output
/// element is accumulated wholly by one thread in a fixed order, so the two
/// policies produce bitwise-identical results at any thread count.
enum class Exec { serial, parallel };

/// Sparse, read-only view of an (orthonormal) family of structure matrices,
/// packed two ways: element-major triplets (for coefficient evaluation and
/// system assembly) and entry-major adjacency (for scatter-free
/// accumulation). Zero entries are skipped, which collapses the cost for
/// coordinate, Hankel and convolution-band structures; dense families
/// degrade gracefully to full storage.
struct BasisView {
  int rows = 0;
  int cols = 0;
  int count = 0;  // number of family elements

  // Element-major: triplets of element k live in [elem_offsets[k], elem_offsets[k+1]).
  std::vector<int> elem_offsets;
  std::vector<int> elem_row;
  std::vector<int> elem_col;
  std::vector<double> elem_weight;

  // Entry-major: pairs (element, weight) touching flat entry e live in
  // [entry_offsets[e], entry_offsets[e+1]), ordered by element index.
  std::vector<int> entry_offsets;
  std::vector<int> entry_elem;
  std::vector<double> entry_weight;

  static BasisView pack(int rows, int cols,
                        const std::vector<DenseMatrix>& family);

  int nnz() const noexcept { return static_cast<int>(elem_row.size()); }
};

/// coeffs[k] = <B_k, x - base> for every element of the family.
void structure_coefficients(const BasisView& basis, const DenseMatrix& x,
                            const DenseMatrix& base, std::vector<double>& coeffs,
                            Exec exec = Exec::parallel);

/// out = base + sum_k coeffs[k] * B_k (entry-major gather, no scatter races).
void structure_accumulate(const BasisView& basis, const DenseMatrix& base,
                          const std::vector<double>& coeffs, DenseMatrix& out,
                          Exec exec = Exec::parallel);

/// Assembles the normal-space interaction system at a rank projection:
///   a[k][l] = <N_k, B_l>,  k over the normal basis of the variety,
///                          l over the structure family;
///   b[k]    = <N_k, truncated - m>.
/// a is (p-r)(q-r) x count, row-major.
void assemble_normal_system(const RankProjection& proj, const BasisView& basis,
                            const DenseMatrix& m, DenseMatrix& a,
                            std::vector<double>& b, Exec exec = Exec::parallel);

/// Assembles the tangent-space interaction system against a family spanning
/// the orthogonal complement of the structure's direction space:
///   a[k][l] = <C_k, T_l>,  k over the complement family,
///                          l over the tangent family of the projection;
///   b[k]    = <C_k, m - truncated>.
/// a is count x (p+q-r)r, row-major.
void assemble_tangent_system(const RankProjection& proj,
                             const BasisView& complement, const DenseMatrix& m,
                             DenseMatrix& a, std::vector<double>& b,
                             Exec exec = Exec::parallel);

}  // namespace slra::kernels
