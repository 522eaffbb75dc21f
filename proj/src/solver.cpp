#include "slra/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "slra/linalg.hpp"

namespace slra {

std::string method_name(Method m) {
  switch (m) {
    case Method::newton_v1: return "newton_v1";
    case Method::newton_v2: return "newton_v2";
    case Method::cadzow: return "cadzow";
    case Method::auto_select: return "auto";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "newton_v1") return Method::newton_v1;
  if (name == "newton_v2") return Method::newton_v2;
  if (name == "cadzow") return Method::cadzow;
  if (name == "auto") return Method::auto_select;
  throw std::invalid_argument("unknown method \"" + name + "\"");
}

Method select_method(int p, int q, int r, int d) {
  // Compare the dominant assembly/solve costs of the two variants; ties go
  // to the normal-coordinate form, whose system is usually the smaller one.
  const long long v1 = static_cast<long long>(d) * (p - r) * (q - r);
  const long long v2 =
      (static_cast<long long>(p) * q - d) * (p + q - r) * r;
  return v1 <= v2 ? Method::newton_v1 : Method::newton_v2;
}

StoppingCriteria StoppingCriteria::relative_default(const DenseMatrix& m0) {
  StoppingCriteria s;
  s.step_tol = 1e-12 * frobenius_norm(m0);
  return s;
}

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::step_converged: return "step_converged";
    case Termination::sigma_converged: return "sigma_converged";
    case Termination::max_iters: return "max_iters";
    case Termination::gap_failure: return "gap_failure";
    case Termination::diverged: return "diverged";
  }
  return "unknown";
}

void SlraProblem::validate() const {
  if (initial.rows() != structure.rows() || initial.cols() != structure.cols())
    throw std::invalid_argument("SlraProblem: initial/structure shape mismatch");
  if (target_rank < 1 || target_rank >= std::min(initial.rows(), initial.cols()))
    throw std::invalid_argument("SlraProblem: need 1 <= rank < min(p, q)");
  if (stopping.max_iters < 1)
    throw std::invalid_argument("SlraProblem: need max_iters >= 1");
  if (stopping.step_tol <= 0.0 && !stopping.sigma_tol)
    throw std::invalid_argument(
        "SlraProblem: stopping needs step_tol > 0 or sigma_tol");
  if (!(gap_tol > 0.0) || !std::isfinite(gap_tol))
    throw std::invalid_argument("SlraProblem: gap_tol must be positive");
  const double residual = structure.membership_residual(initial);
  if (residual > 1e-8 * std::max(1.0, frobenius_norm(initial)))
    throw std::invalid_argument(
        "SlraProblem: initial matrix is not in the structure (residual " +
        std::to_string(residual) + ")");
}

DenseMatrix step_newton_v1(const DenseMatrix& m, const AffineStructure& structure,
                           const RankProjection& proj, kernels::Exec exec) {
  DenseMatrix a;
  std::vector<double> b;
  kernels::assemble_normal_system(proj, structure.basis_view(), m, a, b, exec);
  std::vector<double> x = min_norm_solve(a, b);
  DenseMatrix out;
  kernels::structure_accumulate(structure.basis_view(), m, x, out, exec);
  return out;
}

DenseMatrix step_newton_v2(const DenseMatrix& m, const AffineStructure& structure,
                           const RankProjection& proj, kernels::Exec exec) {
  DenseMatrix a;
  std::vector<double> b;
  kernels::assemble_tangent_system(proj, structure.complement_view(), m, a, b,
                                   exec);
  std::vector<double> x = min_norm_solve(a, b);
  return proj.truncated() + proj.tangent_combine(x);
}

DenseMatrix step_cadzow(const DenseMatrix& m, const AffineStructure& structure,
                        const RankProjection& proj, kernels::Exec exec) {
  (void)m;
  return structure.project_onto(proj.truncated(), exec);
}

DenseMatrix step_newton_v1(const DenseMatrix& m, const AffineStructure& structure,
                           int target_rank) {
  return step_newton_v1(m, structure, RankProjection::compute(m, target_rank));
}

DenseMatrix step_newton_v2(const DenseMatrix& m, const AffineStructure& structure,
                           int target_rank) {
  return step_newton_v2(m, structure, RankProjection::compute(m, target_rank));
}

DenseMatrix step_cadzow(const DenseMatrix& m, const AffineStructure& structure,
                        int target_rank) {
  return step_cadzow(m, structure, RankProjection::compute(m, target_rank));
}

SlraResult solve(const SlraProblem& problem, kernels::Exec exec) {
  problem.validate();
  Method method = problem.method;
  if (method == Method::auto_select)
    method = select_method(problem.initial.rows(), problem.initial.cols(),
                           problem.target_rank, problem.structure.dim());

  SlraResult result;
  result.final_matrix = problem.initial;
  result.trace.initial_norm = frobenius_norm(problem.initial);
  result.trace.termination = Termination::max_iters;
  const double divergence_bound = 10.0 * result.trace.initial_norm;

  DenseMatrix m = problem.initial;
  for (int iter = 1; iter <= problem.stopping.max_iters; ++iter) {
    std::optional<RankProjection> maybe_proj;
    try {
      maybe_proj.emplace(
          RankProjection::compute(m, problem.target_rank, problem.gap_tol));
    } catch (const GapTooSmall&) {
      result.trace.termination = Termination::gap_failure;
      break;
    }
    const RankProjection& proj = *maybe_proj;
    const double sigma_r = proj.sigma()[problem.target_rank - 1];
    const double sigma_r1 = proj.sigma()[problem.target_rank];

    if (problem.stopping.sigma_tol && sigma_r1 < *problem.stopping.sigma_tol) {
      result.trace.termination = Termination::sigma_converged;
      break;
    }

    DenseMatrix next;
    switch (method) {
      case Method::newton_v1: next = step_newton_v1(m, problem.structure, proj, exec); break;
      case Method::newton_v2: next = step_newton_v2(m, problem.structure, proj, exec); break;
      case Method::cadzow: next = step_cadzow(m, problem.structure, proj, exec); break;
      case Method::auto_select: throw std::logic_error("unresolved method");
    }
    const double step = frobenius_norm(next - m);
    result.trace.records.push_back(
        {iter, step, sigma_r, sigma_r1, proj.distance()});

    if (step > divergence_bound) {
      result.trace.termination = Termination::diverged;
      break;  // keep m, the last iterate that still made sense
    }
    m = std::move(next);
    if (problem.stopping.step_tol > 0.0 && step < problem.stopping.step_tol) {
      result.trace.termination = Termination::step_converged;
      break;
    }
  }

  result.final_matrix = std::move(m);
  result.residual_to_input =
      frobenius_norm(result.final_matrix - problem.initial);
  return result;
}

}  // namespace slra
