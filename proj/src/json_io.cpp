#include "slra/json_io.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace slra {

namespace {

std::pair<int, int> shape_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer())
    throw std::invalid_argument("json: \"shape\" must be [rows, cols]");
  const int rows = j[0].get<int>();
  const int cols = j[1].get<int>();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("json: shape entries must be positive");
  return {rows, cols};
}

}  // namespace

nlohmann::json matrix_to_flat(const DenseMatrix& m) {
  return nlohmann::json(
      std::vector<double>(m.entries().begin(), m.entries().end()));
}

DenseMatrix matrix_from_flat(int rows, int cols, const nlohmann::json& flat) {
  if (!flat.is_array())
    throw std::invalid_argument("json: matrix entries must be an array");
  std::vector<double> entries;
  entries.reserve(flat.size());
  for (const auto& e : flat) {
    if (!e.is_number())
      throw std::invalid_argument("json: matrix entry is not a number");
    entries.push_back(e.get<double>());
  }
  return DenseMatrix(rows, cols, std::move(entries));
}

nlohmann::json structure_to_json(const AffineStructure& structure) {
  nlohmann::json generators = nlohmann::json::array();
  for (const auto& e : structure.basis()) generators.push_back(matrix_to_flat(e));
  return {{"shape", {structure.rows(), structure.cols()}},
          {"base", matrix_to_flat(structure.base())},
          {"generators", std::move(generators)}};
}

AffineStructure structure_from_json(const nlohmann::json& j) {
  const auto [rows, cols] = shape_from_json(j.at("shape"));
  DenseMatrix base = matrix_from_flat(rows, cols, j.at("base"));
  const auto& gens = j.at("generators");
  if (!gens.is_array())
    throw std::invalid_argument("json: \"generators\" must be an array");
  std::vector<DenseMatrix> generators;
  generators.reserve(gens.size());
  for (const auto& g : gens)
    generators.push_back(matrix_from_flat(rows, cols, g));
  return AffineStructure::from_generators(std::move(base), generators);
}

nlohmann::json problem_to_json(const SlraProblem& problem) {
  nlohmann::json stopping = {{"step_tol", problem.stopping.step_tol},
                             {"max_iters", problem.stopping.max_iters}};
  if (problem.stopping.sigma_tol)
    stopping["sigma_tol"] = *problem.stopping.sigma_tol;
  return {{"structure", structure_to_json(problem.structure)},
          {"initial", matrix_to_flat(problem.initial)},
          {"rank", problem.target_rank},
          {"method", method_name(problem.method)},
          {"stopping", std::move(stopping)},
          {"gap_tol", problem.gap_tol}};
}

SlraProblem problem_from_json(const nlohmann::json& j) {
  AffineStructure structure = structure_from_json(j.at("structure"));
  DenseMatrix initial =
      matrix_from_flat(structure.rows(), structure.cols(), j.at("initial"));
  if (!j.contains("rank"))
    throw std::invalid_argument("json: problem needs a \"rank\"");
  const int rank = j.at("rank").get<int>();

  Method method = Method::auto_select;
  if (j.contains("method"))
    method = method_from_name(j.at("method").get<std::string>());

  StoppingCriteria stopping = StoppingCriteria::relative_default(initial);
  if (j.contains("stopping")) {
    const auto& s = j.at("stopping");
    if (s.contains("step_tol")) stopping.step_tol = s.at("step_tol").get<double>();
    if (s.contains("sigma_tol"))
      stopping.sigma_tol = s.at("sigma_tol").get<double>();
    if (s.contains("max_iters"))
      stopping.max_iters = s.at("max_iters").get<int>();
  }
  SlraProblem problem{std::move(initial), std::move(structure), rank, method,
                      stopping};
  if (j.contains("gap_tol")) problem.gap_tol = j.at("gap_tol").get<double>();
  return problem;
}

CoordinateMask mask_from_json(const nlohmann::json& j) {
  CoordinateMask mask;
  std::tie(mask.rows, mask.cols) = shape_from_json(j.at("shape"));
  const auto& observed = j.at("observed");
  if (!observed.is_array())
    throw std::invalid_argument("json: \"observed\" must be an array");
  for (const auto& obs : observed) {
    if (!obs.is_array() || obs.size() != 3)
      throw std::invalid_argument("json: observation must be [row, col, value]");
    mask.observed.push_back({obs[0].get<int>(), obs[1].get<int>(),
                             obs[2].get<double>()});
  }
  return mask;
}

nlohmann::json mask_to_json(const CoordinateMask& mask) {
  nlohmann::json observed = nlohmann::json::array();
  for (const auto& obs : mask.observed)
    observed.push_back({obs.row, obs.col, obs.value});
  return {{"shape", {mask.rows, mask.cols}}, {"observed", std::move(observed)}};
}

nlohmann::json result_to_json(const SlraResult& result) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& rec : result.trace.records)
    trace.push_back({{"iteration", rec.iteration},
                     {"step_norm", rec.step_norm},
                     {"sigma_r", rec.sigma_r},
                     {"sigma_r_plus_1", rec.sigma_r_plus_1},
                     {"dist_to_rank", rec.dist_to_rank}});
  return {{"termination", termination_name(result.trace.termination)},
          {"iterations", result.trace.iterations()},
          {"residual_to_input", result.residual_to_input},
          {"shape", {result.final_matrix.rows(), result.final_matrix.cols()}},
          {"final", matrix_to_flat(result.final_matrix)},
          {"trace", std::move(trace)}};
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << "iteration,step_norm,sigma_r,sigma_r_plus_1\n";
  char buf[160];
  for (const auto& rec : trace.records) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g", rec.iteration,
                  rec.step_norm, rec.sigma_r, rec.sigma_r_plus_1);
    out << buf << '\n';
  }
}

}  // namespace slra
