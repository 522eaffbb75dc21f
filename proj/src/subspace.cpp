#include "slra/subspace.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "slra/linalg.hpp"

namespace slra {

struct AffineStructure::Core {
  DenseMatrix base;
  std::vector<DenseMatrix> basis;
  kernels::BasisView view;

  // Lazily completed complement; guarded so shared copies can race on first
  // use without rebuilding it twice.
  mutable std::mutex lazy_mutex;
  mutable std::vector<DenseMatrix> complement;
  mutable kernels::BasisView complement_v;
  mutable bool complement_ready = false;

  void ensure_complement() const;
};

namespace {

// Pairwise Frobenius inner products can only be nonzero where supports
// overlap, so walking the entry-major adjacency checks exactly the pairs
// that matter: cheap for coordinate/band structures, full Gram for dense.
void check_orthonormal(const kernels::BasisView& view) {
  std::vector<double> self(view.count, 0.0);
  std::unordered_map<long long, double> cross;
  const int entries = view.rows * view.cols;
  for (int e = 0; e < entries; ++e)
    for (int s = view.entry_offsets[e]; s < view.entry_offsets[e + 1]; ++s) {
      self[view.entry_elem[s]] += view.entry_weight[s] * view.entry_weight[s];
      for (int t = s + 1; t < view.entry_offsets[e + 1]; ++t) {
        const long long key = static_cast<long long>(view.entry_elem[s]) *
                                  view.count + view.entry_elem[t];
        cross[key] += view.entry_weight[s] * view.entry_weight[t];
      }
    }
  for (double n2 : self)
    if (std::abs(n2 - 1.0) > 1e-8)
      throw std::invalid_argument(
          "AffineStructure: basis element is not unit norm");
  for (const auto& [key, dot] : cross)
    if (std::abs(dot) > 1e-8)
      throw std::invalid_argument(
          "AffineStructure: basis elements are not orthogonal");
}

// True when every element touches exactly one entry with weight +-1 and no
// entry is touched twice: the coordinate-structure fast path, whose
// complement is just the untouched coordinate matrices.
bool is_coordinate_family(const kernels::BasisView& view) {
  for (int k = 0; k < view.count; ++k)
    if (view.elem_offsets[k + 1] - view.elem_offsets[k] != 1 ||
        std::abs(view.elem_weight[view.elem_offsets[k]]) != 1.0)
      return false;
  const int entries = view.rows * view.cols;
  for (int e = 0; e < entries; ++e)
    if (view.entry_offsets[e + 1] - view.entry_offsets[e] > 1) return false;
  return true;
}

DenseMatrix coordinate_matrix(int rows, int cols, int flat) {
  DenseMatrix m(rows, cols);
  m(flat / cols, flat % cols) = 1.0;
  return m;
}

}  // namespace

void AffineStructure::Core::ensure_complement() const {
  std::lock_guard<std::mutex> lock(lazy_mutex);
  if (complement_ready) return;

  const int rows = base.rows(), cols = base.cols();
  const int ambient = rows * cols;
  const int want = ambient - static_cast<int>(basis.size());
  std::vector<DenseMatrix> result;
  result.reserve(want);

  if (is_coordinate_family(view)) {
    for (int e = 0; e < ambient; ++e)
      if (view.entry_offsets[e + 1] == view.entry_offsets[e])
        result.push_back(coordinate_matrix(rows, cols, e));
  } else {
    // Complete the basis over the coordinate candidates with the same
    // doubly-swept Gram-Schmidt used at construction.
    std::vector<DenseMatrix> family = basis;
    family.reserve(ambient);
    for (int e = 0; e < ambient; ++e)
      family.push_back(coordinate_matrix(rows, cols, e));
    std::vector<DenseMatrix> full = gram_schmidt(family, 1e-10);
    result.assign(full.begin() + basis.size(), full.end());
  }

  if (static_cast<int>(result.size()) != want)
    throw std::runtime_error(
        "AffineStructure: complement completion lost dimensions (basis "
        "nearly dependent?)");
  complement_v = kernels::BasisView::pack(rows, cols, result);
  complement = std::move(result);
  complement_ready = true;
}

AffineStructure AffineStructure::from_generators(
    DenseMatrix base, const std::vector<DenseMatrix>& generators,
    double drop_tol) {
  for (const auto& g : generators)
    if (!g.same_shape(base))
      throw std::invalid_argument("AffineStructure: generator shape mismatch");
  std::vector<DenseMatrix> basis = gram_schmidt(generators, drop_tol);
  if (basis.empty())
    throw std::invalid_argument(
        "AffineStructure: generators span nothing (all zero or dependent)");
  return from_orthonormal_basis(std::move(base), std::move(basis));
}

AffineStructure AffineStructure::from_orthonormal_basis(
    DenseMatrix base, std::vector<DenseMatrix> basis,
    std::vector<DenseMatrix> complement) {
  if (base.rows() == 0 || base.cols() == 0)
    throw std::invalid_argument("AffineStructure: empty base shape");
  const int ambient = base.rows() * base.cols();
  if (static_cast<int>(basis.size()) >= ambient)
    throw std::invalid_argument(
        "AffineStructure: direction space must be a proper subspace");

  auto core = std::make_shared<Core>();
  core->view = kernels::BasisView::pack(base.rows(), base.cols(), basis);
  check_orthonormal(core->view);
  core->base = std::move(base);
  core->basis = std::move(basis);

  if (!complement.empty()) {
    if (static_cast<int>(complement.size()) != ambient - core->view.count)
      throw std::invalid_argument(
          "AffineStructure: supplied complement has wrong size");
    // Checking basis + complement together as one family also certifies that
    // the two halves are orthogonal to each other.
    std::vector<DenseMatrix> combined = core->basis;
    combined.insert(combined.end(), complement.begin(), complement.end());
    check_orthonormal(
        kernels::BasisView::pack(core->base.rows(), core->base.cols(), combined));
    core->complement_v =
        kernels::BasisView::pack(core->base.rows(), core->base.cols(), complement);
    core->complement = std::move(complement);
    core->complement_ready = true;
  }
  return AffineStructure(std::move(core));
}

int AffineStructure::rows() const noexcept { return core_->base.rows(); }
int AffineStructure::cols() const noexcept { return core_->base.cols(); }
int AffineStructure::dim() const noexcept {
  return static_cast<int>(core_->basis.size());
}

const DenseMatrix& AffineStructure::base() const noexcept {
  return core_->base;
}

const std::vector<DenseMatrix>& AffineStructure::basis() const noexcept {
  return core_->basis;
}

const kernels::BasisView& AffineStructure::basis_view() const noexcept {
  return core_->view;
}

const std::vector<DenseMatrix>& AffineStructure::complement() const {
  core_->ensure_complement();
  return core_->complement;
}

const kernels::BasisView& AffineStructure::complement_view() const {
  core_->ensure_complement();
  return core_->complement_v;
}

DenseMatrix AffineStructure::project_onto(const DenseMatrix& x,
                                          kernels::Exec exec) const {
  std::vector<double> coeffs;
  kernels::structure_coefficients(core_->view, x, core_->base, coeffs, exec);
  DenseMatrix out;
  kernels::structure_accumulate(core_->view, core_->base, coeffs, out, exec);
  return out;
}

double AffineStructure::membership_residual(const DenseMatrix& x) const {
  return frobenius_norm(x - project_onto(x));
}

}  // namespace slra
