#pragma once

#include <iosfwd>

#include "json.hpp"
#include "slra/solver.hpp"
#include "slra/structures.hpp"

namespace slra {

/// JSON wire formats used by the CLI.
///
/// Matrices travel as flat row-major arrays with the shape carried by the
/// surrounding object:
///   structure: {"shape": [p, q], "base": [..p*q..],
///               "generators": [[..p*q..], ...]}
///   problem:   {"structure": {...}, "initial": [..p*q..], "rank": r,
///               "method": "newton_v1|newton_v2|cadzow|auto" (default auto),
///               "stopping": {"step_tol": t, "sigma_tol": s,
///                            "max_iters": n} (default: relative step rule)}
///   mask:      {"shape": [p, q], "observed": [[row, col, value], ...]}
/// Results serialize as {"termination", "iterations", "residual_to_input",
/// "shape", "final", "trace": [{iteration, step_norm, sigma_r,
/// sigma_r_plus_1, dist_to_rank}, ...]}.

nlohmann::json matrix_to_flat(const DenseMatrix& m);
DenseMatrix matrix_from_flat(int rows, int cols, const nlohmann::json& flat);

nlohmann::json structure_to_json(const AffineStructure& structure);
AffineStructure structure_from_json(const nlohmann::json& j);

nlohmann::json problem_to_json(const SlraProblem& problem);
SlraProblem problem_from_json(const nlohmann::json& j);

CoordinateMask mask_from_json(const nlohmann::json& j);
nlohmann::json mask_to_json(const CoordinateMask& mask);

nlohmann::json result_to_json(const SlraResult& result);

/// The per-run trace table: header
/// "iteration,step_norm,sigma_r,sigma_r_plus_1" and one row per step,
/// doubles printed with %.17g.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

}  // namespace slra
