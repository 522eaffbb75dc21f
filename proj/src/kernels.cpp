#include "slra/kernels.hpp"

#include <stdexcept>
#include <string>

namespace slra::kernels {

BasisView BasisView::pack(int rows, int cols,
                          const std::vector<DenseMatrix>& family) {
  if (rows <= 0 || cols <= 0)
    throw std::invalid_argument("BasisView: empty shape");
  BasisView view;
  view.rows = rows;
  view.cols = cols;
  view.count = static_cast<int>(family.size());

  view.elem_offsets.reserve(family.size() + 1);
  view.elem_offsets.push_back(0);
  for (const auto& f : family) {
    if (f.rows() != rows || f.cols() != cols)
      throw std::invalid_argument("BasisView: mixed shapes in family");
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j)
        if (double w = f(i, j); w != 0.0) {
          view.elem_row.push_back(i);
          view.elem_col.push_back(j);
          view.elem_weight.push_back(w);
        }
    view.elem_offsets.push_back(view.nnz());
  }

  // Entry-major transpose of the triplets; counting sort keeps the pairs for
  // each entry ordered by element index, which pins the accumulation order.
  const int entries = view.rows * view.cols;
  std::vector<int> counts(entries + 1, 0);
  for (size_t t = 0; t < view.elem_row.size(); ++t)
    ++counts[view.elem_row[t] * view.cols + view.elem_col[t] + 1];
  for (int e = 0; e < entries; ++e) counts[e + 1] += counts[e];
  view.entry_offsets = counts;
  view.entry_elem.resize(view.elem_row.size());
  view.entry_weight.resize(view.elem_row.size());
  std::vector<int> cursor(view.entry_offsets.begin(), view.entry_offsets.end() - 1);
  for (int k = 0; k < view.count; ++k)
    for (int t = view.elem_offsets[k]; t < view.elem_offsets[k + 1]; ++t) {
      const int e = view.elem_row[t] * view.cols + view.elem_col[t];
      view.entry_elem[cursor[e]] = k;
      view.entry_weight[cursor[e]] = view.elem_weight[t];
      ++cursor[e];
    }
  return view;
}

namespace {

void check_shape(const BasisView& basis, const DenseMatrix& m,
                 const char* where) {
  if (m.rows() != basis.rows || m.cols() != basis.cols)
    throw std::invalid_argument(std::string(where) + ": shape mismatch");
}

}  // namespace

void structure_coefficients(const BasisView& basis, const DenseMatrix& x,
                            const DenseMatrix& base, std::vector<double>& coeffs,
                            Exec exec) {
  check_shape(basis, x, "structure_coefficients");
  check_shape(basis, base, "structure_coefficients");
  coeffs.assign(static_cast<size_t>(basis.count), 0.0);
  const double* px = x.data();
  const double* pb = base.data();
  const int q = basis.cols;

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < basis.count; ++k) {
    double acc = 0.0;
    for (int t = basis.elem_offsets[k]; t < basis.elem_offsets[k + 1]; ++t) {
      const int e = basis.elem_row[t] * q + basis.elem_col[t];
      acc += basis.elem_weight[t] * (px[e] - pb[e]);
    }
    coeffs[k] = acc;
  }
}

void structure_accumulate(const BasisView& basis, const DenseMatrix& base,
                          const std::vector<double>& coeffs, DenseMatrix& out,
                          Exec exec) {
  check_shape(basis, base, "structure_accumulate");
  if (coeffs.size() != static_cast<size_t>(basis.count))
    throw std::invalid_argument("structure_accumulate: coefficient count mismatch");
  out = base;
  double* po = out.data();
  const int entries = basis.rows * basis.cols;

#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int e = 0; e < entries; ++e) {
    double acc = 0.0;
    for (int t = basis.entry_offsets[e]; t < basis.entry_offsets[e + 1]; ++t)
      acc += coeffs[basis.entry_elem[t]] * basis.entry_weight[t];
    po[e] += acc;
  }
}

void assemble_normal_system(const RankProjection& proj, const BasisView& basis,
                            const DenseMatrix& m, DenseMatrix& a,
                            std::vector<double>& b, Exec exec) {
  check_shape(basis, m, "assemble_normal_system");
  if (proj.rows() != basis.rows || proj.cols() != basis.cols)
    throw std::invalid_argument("assemble_normal_system: projection shape mismatch");
  const int p = proj.rows(), q = proj.cols(), r = proj.target_rank();
  const int nr = p - r, nc = q - r;
  a = DenseMatrix(nr * nc, basis.count);
  double* pa = a.data();
  const double* pu = proj.u().data();  // p x p row-major
  const double* pv = proj.v().data();  // q x q row-major

  // Column l collects <N_(i,j), B_l> = sum over the triplets of B_l of
  // w * u~(row)_i * v~(col)_j -- an outer product of the trailing slices of
  // the touched U and V rows, accumulated per triplet.
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int l = 0; l < basis.count; ++l) {
    for (int t = basis.elem_offsets[l]; t < basis.elem_offsets[l + 1]; ++t) {
      const double w = basis.elem_weight[t];
      const double* urow = pu + basis.elem_row[t] * p + r;  // trailing p-r
      const double* vrow = pv + basis.elem_col[t] * q + r;  // trailing q-r
      for (int i = 0; i < nr; ++i) {
        const double wu = w * urow[i];
        double* arow = pa + (i * nc) * basis.count + l;
        for (int j = 0; j < nc; ++j) arow[j * basis.count] += wu * vrow[j];
      }
    }
  }

  b = proj.normal_inner(proj.truncated() - m);
}

void assemble_tangent_system(const RankProjection& proj,
                             const BasisView& complement, const DenseMatrix& m,
                             DenseMatrix& a, std::vector<double>& b,
                             Exec exec) {
  check_shape(complement, m, "assemble_tangent_system");
  if (proj.rows() != complement.rows || proj.cols() != complement.cols)
    throw std::invalid_argument("assemble_tangent_system: projection shape mismatch");
  const int p = proj.rows(), q = proj.cols(), r = proj.target_rank();
  const int tdim = proj.tangent_dim();
  a = DenseMatrix(complement.count, tdim);
  b.assign(static_cast<size_t>(complement.count), 0.0);
  double* pa = a.data();
  double* pb = b.data();
  const double* pu = proj.u().data();
  const double* pv = proj.v().data();
  const double* pm = m.data();
  const double* pt = proj.truncated().data();

  // Row k holds the tangent coordinates of complement element C_k:
  // <C_k, u_i v_j^T> = sum over triplets of w * u(row)_i * v(col)_j, laid out
  // in the documented tangent order. The rhs <C_k, m - truncated> reuses the
  // same sparse sweep.
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (int k = 0; k < complement.count; ++k) {
    double* arow = pa + static_cast<size_t>(k) * tdim;
    double rhs = 0.0;
    for (int t = complement.elem_offsets[k]; t < complement.elem_offsets[k + 1];
         ++t) {
      const double w = complement.elem_weight[t];
      const int row = complement.elem_row[t];
      const int col = complement.elem_col[t];
      const double* urow = pu + row * p;
      const double* vrow = pv + col * q;
      for (int i = 0; i < r; ++i) {
        const double wu = w * urow[i];
        for (int j = 0; j < q; ++j) arow[i * q + j] += wu * vrow[j];
      }
      for (int i = r; i < p; ++i) {
        const double wu = w * urow[i];
        for (int j = 0; j < r; ++j) arow[r * q + (i - r) * r + j] += wu * vrow[j];
      }
      const int e = row * q + col;
      rhs += w * (pm[e] - pt[e]);
    }
    pb[k] = rhs;
  }
}

}  // namespace slra::kernels
