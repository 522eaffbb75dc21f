#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slra/kernels.hpp"
#include "slra/manifold.hpp"
#include "slra/subspace.hpp"

namespace slra {

/// Iteration rules for structured low-rank approximation: find a matrix in
/// the affine structure E, of rank at most r, close to the input.
enum class Method {
  newton_v1,    // least squares in the normal coordinates of the variety
  newton_v2,    // least squares in the tangent coordinates (dual data)
  cadzow,       // alternating projections: rank truncation, then onto E
  auto_select,  // pick the cheaper Newton variant from the problem sizes
};

std::string method_name(Method m);

/// Inverse of method_name ("auto" names auto_select); throws
/// std::invalid_argument on unknown names.
Method method_from_name(const std::string& name);

/// Cost-based choice between the two Newton variants. The normal-coordinate
/// system is d x (p-r)(q-r)-shaped; the tangent-coordinate system is
/// (pq-d) x (p+q-r)r-shaped. Picks newton_v1 when
///   d * (p-r) * (q-r) <= (p*q - d) * (p+q-r) * r
/// and newton_v2 otherwise.
Method select_method(int p, int q, int r, int d);

struct StoppingCriteria {
  /// Stop once a step norm falls below this (absolute; 0 disables).
  double step_tol = 0.0;
  /// Stop (before stepping) once sigma_{r+1} of the iterate falls below
  /// this: the iterate is already numerically on the variety.
  std::optional<double> sigma_tol;
  int max_iters = 100;

  /// step_tol = 1e-12 * |m0|, the default when nothing else is requested.
  static StoppingCriteria relative_default(const DenseMatrix& m0);
};

enum class Termination {
  step_converged,
  sigma_converged,
  max_iters,
  gap_failure,  // spectral gap collapsed; last valid iterate is returned
  diverged,     // a step exceeded 10 * |m0|; last valid iterate is returned
};

std::string termination_name(Termination t);

/// One row per performed step.
struct TraceRecord {
  int iteration;       // 1-based
  double step_norm;    // |m_i - m_{i-1}|
  double sigma_r;      // of the iterate the step started from
  double sigma_r_plus_1;
  double dist_to_rank;  // Frobenius distance of that iterate to rank <= r
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;
  Termination termination = Termination::max_iters;
  double initial_norm = 0.0;  // |m0|, the scale steps are judged against
  int iterations() const noexcept { return static_cast<int>(records.size()); }
};

struct SlraProblem {
  DenseMatrix initial;      // must lie in the structure
  AffineStructure structure;
  int target_rank = 0;
  Method method = Method::auto_select;
  StoppingCriteria stopping;
  /// Relative spectral-gap guard handed to every rank projection: the run
  /// aborts with gap_failure once sigma_r - sigma_{r+1} <= gap_tol * sigma_1.
  /// The conservative default suits generic data; benchmark families that
  /// legitimately operate at small gaps (e.g. near-coalescing exponential
  /// signals) lower it.
  double gap_tol = RankProjection::kDefaultGapTol;

  /// Throws std::invalid_argument if the rank bounds fail, the initial
  /// matrix is not in E (residual above 1e-8 * max(1, |initial|)), or
  /// gap_tol is not a positive finite number.
  void validate() const;
};

struct SlraResult {
  DenseMatrix final_matrix;
  ConvergenceTrace trace;
  double residual_to_input = 0.0;  // |final - initial|
};

/// One Newton step in normal coordinates: project m onto rank <= r, assemble
/// a[k][l] = <N_k, B_l>, b[k] = <N_k, truncated - m> over the structure
/// basis B, solve the minimum-norm least squares problem and move inside E:
///   m' = m + sum_l x_l B_l.
/// In the transversal regime this is the exact projection of m onto the
/// intersection of E with the tangent space of the variety at the truncation.
DenseMatrix step_newton_v1(const DenseMatrix& m, const AffineStructure& structure,
                           const RankProjection& proj,
                           kernels::Exec exec = kernels::Exec::parallel);

/// The dual step in tangent coordinates: assemble a[k][l] = <C_k, T_l> over
/// the complement family C of the structure and the tangent family T of the
/// projection, b[k] = <C_k, m - truncated>, solve minimum-norm least squares
/// and move inside the tangent space:
///   m' = truncated + sum_l x_l T_l.
/// Coincides with step_newton_v1 whenever E meets the tangent space
/// transversally; preferable when the structure has small codimension.
DenseMatrix step_newton_v2(const DenseMatrix& m, const AffineStructure& structure,
                           const RankProjection& proj,
                           kernels::Exec exec = kernels::Exec::parallel);

/// Alternating-projection step: rank truncation followed by projection onto
/// E. Linearly convergent baseline.
DenseMatrix step_cadzow(const DenseMatrix& m, const AffineStructure& structure,
                        const RankProjection& proj,
                        kernels::Exec exec = kernels::Exec::parallel);

/// Convenience overloads computing the rank projection internally.
DenseMatrix step_newton_v1(const DenseMatrix& m, const AffineStructure& structure,
                           int target_rank);
DenseMatrix step_newton_v2(const DenseMatrix& m, const AffineStructure& structure,
                           int target_rank);
DenseMatrix step_cadzow(const DenseMatrix& m, const AffineStructure& structure,
                        int target_rank);

/// Runs the iteration to termination. Each pass computes one SVD of the
/// iterate, records (step_norm, sigma_r, sigma_{r+1}, distance to the
/// variety), and applies the chosen step. GapTooSmall and divergence abort
/// with the last valid iterate instead of throwing.
SlraResult solve(const SlraProblem& problem,
                 kernels::Exec exec = kernels::Exec::parallel);

}  // namespace slra
