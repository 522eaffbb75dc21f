#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "slra/harness.hpp"
#include "slra/linalg.hpp"
#include "slra/structures.hpp"

namespace harness = slra::harness;
using slra::ConvergenceTrace;
using slra::DenseMatrix;
using slra::TraceRecord;

namespace {

ConvergenceTrace trace_from_steps(const std::vector<double>& steps) {
  ConvergenceTrace trace;
  trace.initial_norm = 1.0;
  int iter = 1;
  for (double s : steps) trace.records.push_back({iter++, s, 1.0, 0.1, 0.1});
  return trace;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("gen_gcd draws unit-norm pairs with the exact divisor degree") {
  const harness::GcdInstance inst = harness::gen_gcd(10, 10, 5, 1e-3, 42);
  CHECK(inst.exact.deg_f() == 10);
  CHECK(inst.exact.deg_g() == 10);
  CHECK(inst.exact.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inst.epsilon == 1e-3);
  CHECK(inst.seed == 42);

  // The exact pair really has gcd degree 5: the d=5 truncation is rank
  // deficient while d=6 is full rank.
  const DenseMatrix s5 = slra::sylvester_matrix(inst.exact, 5);
  const DenseMatrix s6 = slra::sylvester_matrix(inst.exact, 6);
  const slra::SvdFactors f5 = slra::svd(s5);
  const slra::SvdFactors f6 = slra::svd(s6);
  CHECK(f5.sigma.back() <= 1e-8 * f5.sigma.front());
  CHECK(f6.sigma.back() > 1e-8 * f6.sigma.front());

  // Determinism and seed sensitivity.
  const harness::GcdInstance again = harness::gen_gcd(10, 10, 5, 1e-3, 42);
  CHECK(again.exact.f == inst.exact.f);
  CHECK(again.noisy.g == inst.noisy.g);
  const harness::GcdInstance other = harness::gen_gcd(10, 10, 5, 1e-3, 43);
  CHECK(other.exact.f != inst.exact.f);

  CHECK_THROWS_AS(harness::gen_gcd(10, 10, 11, 1e-3, 1), std::invalid_argument);
  CHECK_THROWS_AS(harness::gen_gcd(10, 10, 5, -1.0, 1), std::invalid_argument);
}

TEST_CASE("gen_gcd noise magnitude matches the per-coefficient model") {
  // noisy - exact has m + n + 2 iid N(0, eps^2) coordinates, so the mean
  // norm over many seeds concentrates near eps * sqrt(m + n + 2).
  const int m = 10, n = 10;
  const double eps = 1e-3;
  double acc = 0.0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const harness::GcdInstance inst =
        harness::gen_gcd(m, n, 5, eps, 1000 + static_cast<std::uint64_t>(t));
    double sq = 0.0;
    for (size_t k = 0; k < inst.noisy.f.size(); ++k)
      sq += (inst.noisy.f[k] - inst.exact.f[k]) *
            (inst.noisy.f[k] - inst.exact.f[k]);
    for (size_t k = 0; k < inst.noisy.g.size(); ++k)
      sq += (inst.noisy.g[k] - inst.exact.g[k]) *
            (inst.noisy.g[k] - inst.exact.g[k]);
    acc += std::sqrt(sq);
  }
  const double mean_norm = acc / trials;
  const double expected = eps * std::sqrt(static_cast<double>(m + n + 2));
  CHECK(mean_norm > 0.85 * expected);
  CHECK(mean_norm < 1.15 * expected);

  // epsilon = 0 reproduces the exact pair.
  const harness::GcdInstance clean = harness::gen_gcd(m, n, 5, 0.0, 7);
  CHECK(clean.noisy.f == clean.exact.f);
  CHECK(clean.noisy.g == clean.exact.g);
}

TEST_CASE("gen_completion samples a valid mask over an exact low-rank truth") {
  const harness::CompletionInstance inst = harness::gen_completion(12, 2, 90, 5);
  CHECK(inst.truth.rows() == 12);
  CHECK(inst.truth.cols() == 12);
  CHECK(inst.mask.observed.size() == 90);
  CHECK(inst.sampling_rate() == doctest::Approx(90.0 / 144.0));
  CHECK(inst.dof_ratio() == doctest::Approx(2.0 * (24 - 2) / 90.0));

  const slra::SvdFactors fac = slra::svd(inst.truth);
  CHECK(fac.sigma[2] <= 1e-12 * fac.sigma[0]);
  CHECK(fac.sigma[1] > 1e-8 * fac.sigma[0]);

  std::set<std::pair<int, int>> seen;
  for (const auto& obs : inst.mask.observed) {
    CHECK(obs.row >= 0);
    CHECK(obs.row < 12);
    CHECK(obs.col >= 0);
    CHECK(obs.col < 12);
    CHECK(obs.value == inst.truth(obs.row, obs.col));
    CHECK(seen.emplace(obs.row, obs.col).second);
  }

  const harness::CompletionInstance again = harness::gen_completion(12, 2, 90, 5);
  CHECK(frobenius_norm(again.truth - inst.truth) == 0.0);
  CHECK(again.mask.observed.size() == inst.mask.observed.size());
  for (size_t k = 0; k < inst.mask.observed.size(); ++k) {
    CHECK(again.mask.observed[k].row == inst.mask.observed[k].row);
    CHECK(again.mask.observed[k].col == inst.mask.observed[k].col);
  }

  CHECK_THROWS_AS(harness::gen_completion(12, 0, 90, 5), std::invalid_argument);
  CHECK_THROWS_AS(harness::gen_completion(12, 12, 144, 5), std::invalid_argument);
  CHECK_THROWS_AS(harness::gen_completion(12, 2, 43, 5), std::invalid_argument);
  CHECK_THROWS_AS(harness::gen_completion(12, 2, 145, 5), std::invalid_argument);
}

TEST_CASE("gen_hankel builds the exponential signal with optional outlier") {
  const harness::HankelInstance inst = harness::gen_hankel(1e-3, false, 11);
  REQUIRE(inst.clean.antidiagonals.size() == 11);
  CHECK(inst.clean.rows == 7);
  CHECK(inst.clean.cols == 5);

  const double beta[4] = {1.0, 2.0, 0.5, 1.5};
  const double decay[4] = {-0.1, -0.2, -0.3, -0.35};
  for (int i = 1; i <= 11; ++i) {
    double nu = 0.0;
    for (int l = 0; l < 4; ++l) nu += beta[l] * std::exp(decay[l] * i);
    CHECK(inst.clean.antidiagonals[i - 1] == doctest::Approx(nu).epsilon(1e-14));
  }
  // The clean signal is rank 4 as a 7x5 Hankel matrix (4 exponential modes).
  // The modes nearly coalesce, so sigma_4 is small (about 1e-8.6 relative)
  // but still well separated from the zero sigma_5.
  const slra::HankelStructure hankel(7, 5);
  const slra::SvdFactors fac = slra::svd(hankel.embed(inst.clean));
  CHECK(fac.sigma[4] <= 1e-10 * fac.sigma[0]);
  CHECK(fac.sigma[3] > 1e-9 * fac.sigma[0]);
  CHECK(fac.sigma[3] > 1e4 * fac.sigma[4]);

  // Noise is a nonnegative uniform bump of size at most tau per antidiagonal.
  for (int s = 0; s < 11; ++s) {
    const double bump = inst.noisy.antidiagonals[s] - inst.clean.antidiagonals[s];
    CHECK(bump >= 0.0);
    CHECK(bump <= 1e-3);
  }

  // The outlier flag adds exactly 0.01 to the 8th antidiagonal and nothing
  // else (same seed, so the uniform draws coincide).
  const harness::HankelInstance spiked = harness::gen_hankel(1e-3, true, 11);
  for (int s = 0; s < 11; ++s) {
    const double diff =
        spiked.noisy.antidiagonals[s] - inst.noisy.antidiagonals[s];
    if (s == 7)
      CHECK(diff == doctest::Approx(0.01).epsilon(1e-14));
    else
      CHECK(diff == 0.0);
  }

  CHECK_THROWS_AS(harness::gen_hankel(-1.0, false, 1), std::invalid_argument);
}

TEST_CASE("rate_estimate classifies step cascades") {
  // Ideal quadratic cascade: each step is the square of the previous.
  const harness::RateEstimate quad =
      harness::rate_estimate(trace_from_steps({1e-2, 1e-4, 1e-8}));
  CHECK(quad.classification == harness::RateClass::quadratic);
  CHECK(quad.usable_steps == 3);
  CHECK(quad.exponent == doctest::Approx(2.0).epsilon(1e-9));

  // Steps below ten machine epsilons are noise and must be ignored.
  const harness::RateEstimate floored = harness::rate_estimate(
      trace_from_steps({1e-2, 1e-4, 1e-8, 1e-16, 1e-16}));
  CHECK(floored.classification == harness::RateClass::quadratic);
  CHECK(floored.usable_steps == 3);

  // Geometric decay: exponent ratios (i+1)/i have median near 1.
  std::vector<double> geometric;
  for (int i = 1; i <= 11; ++i) geometric.push_back(std::pow(0.3, i));
  const harness::RateEstimate lin =
      harness::rate_estimate(trace_from_steps(geometric));
  CHECK(lin.classification == harness::RateClass::linear);
  CHECK(lin.usable_steps == 11);
  CHECK(lin.exponent > 0.9);
  CHECK(lin.exponent < 1.2);

  // A published Newton cascade: the last two steps sit below the floor in
  // double precision, the remaining three certify quadratic behavior.
  const harness::RateEstimate newton = harness::rate_estimate(
      trace_from_steps({0.42e-3, 0.19e-5, 0.11e-9, 0.43e-18, 0.10e-34}));
  CHECK(newton.classification == harness::RateClass::quadratic);
  CHECK(newton.usable_steps == 3);
  CHECK(newton.exponent > 1.5);

  // The published first-order competitor on the same grid is not quadratic.
  const harness::RateEstimate gpgcd = harness::rate_estimate(
      trace_from_steps({0.20e-2, 0.30e-3, 0.15e-4, 0.68e-6, 0.17e-8}));
  CHECK(gpgcd.classification != harness::RateClass::quadratic);

  // Too little usable data is inconclusive even when the pair ratio is large.
  const harness::RateEstimate sparse =
      harness::rate_estimate(trace_from_steps({1e-2, 1e-5}));
  CHECK(sparse.classification == harness::RateClass::inconclusive);
  CHECK(sparse.usable_steps == 2);

  const harness::RateEstimate empty = harness::rate_estimate(ConvergenceTrace{});
  CHECK(empty.classification == harness::RateClass::inconclusive);
  CHECK(std::isnan(empty.exponent));

  CHECK(harness::rate_class_name(harness::RateClass::quadratic) == "quadratic");
  CHECK(harness::rate_class_name(harness::RateClass::linear) == "linear");
  CHECK(harness::rate_class_name(harness::RateClass::inconclusive) ==
        "inconclusive");
}

TEST_CASE("preset names round-trip") {
  using harness::Preset;
  for (Preset p : {Preset::table1, Preset::table2, Preset::hankel_table4,
                   Preset::hankel_table5, Preset::completion_phase}) {
    const auto back = harness::preset_from_name(harness::preset_name(p));
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
  CHECK(!harness::preset_from_name("table9").has_value());
}

TEST_CASE("experiments are deterministic and thread-count independent") {
  harness::ExperimentConfig config;
  config.instances = 2;
  config.threads = 1;
  const harness::ExperimentReport a =
      harness::run_experiment(harness::Preset::table2, 99, config);
  REQUIRE(a.accuracy_rows.size() == 8);

  config.threads = 3;
  const harness::ExperimentReport b =
      harness::run_experiment(harness::Preset::table2, 99, config);
  REQUIRE(b.accuracy_rows.size() == 8);
  for (size_t i = 0; i < a.accuracy_rows.size(); ++i) {
    CHECK(a.accuracy_rows[i].dist == b.accuracy_rows[i].dist);
    CHECK(a.accuracy_rows[i].iterations == b.accuracy_rows[i].iterations);
    CHECK(a.accuracy_rows[i].termination == b.accuracy_rows[i].termination);
  }

  // The SLRA_THREADS environment cap routes through the same pool logic.
  ::setenv("SLRA_THREADS", "2", 1);
  config.threads = 0;
  const harness::ExperimentReport c =
      harness::run_experiment(harness::Preset::table2, 99, config);
  ::unsetenv("SLRA_THREADS");
  REQUIRE(c.accuracy_rows.size() == 8);
  for (size_t i = 0; i < a.accuracy_rows.size(); ++i)
    CHECK(a.accuracy_rows[i].dist == c.accuracy_rows[i].dist);

  // A different master seed changes the data.
  const harness::ExperimentReport d =
      harness::run_experiment(harness::Preset::table2, 100, config);
  CHECK(a.accuracy_rows[0].dist != d.accuracy_rows[0].dist);

  // Solves converged and the summary carries one cell per noise level.
  for (const auto& row : a.accuracy_rows) {
    CHECK(row.termination == "step_converged");
    CHECK(row.dist > 0.0);
  }
  REQUIRE(a.summary.contains("cells"));
  CHECK(a.summary["cells"].size() == 4);
  for (const auto& cell : a.summary["cells"]) {
    CHECK(cell.contains("mean_iterations"));
    CHECK(cell.contains("mean_dist"));
    CHECK(cell.contains("reference"));
  }
}

TEST_CASE("report files are stable apart from the timestamp header") {
  harness::ExperimentConfig config;
  config.instances = 1;
  config.threads = 1;
  const harness::ExperimentReport report =
      harness::run_experiment(harness::Preset::table1, 5, config);

  namespace fs = std::filesystem;
  const fs::path dir_a = fs::temp_directory_path() / "slra_report_a";
  const fs::path dir_b = fs::temp_directory_path() / "slra_report_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
  report.write_files(dir_a.string());
  report.write_files(dir_b.string());

  for (const char* name : {"table1_rows.csv", "table1_steps.csv"}) {
    const auto lines_a = read_lines(dir_a / name);
    const auto lines_b = read_lines(dir_b / name);
    REQUIRE(lines_a.size() == lines_b.size());
    REQUIRE(lines_a.size() >= 2);
    CHECK(lines_a[0].rfind("# table1 seed=5", 0) == 0);
    for (size_t i = 1; i < lines_a.size(); ++i) CHECK(lines_a[i] == lines_b[i]);
  }
  const auto rows = read_lines(dir_a / "table1_rows.csv");
  CHECK(rows[1] == "instance,iterations,termination,exponent,classification,cascade_ok");
  CHECK(rows.size() == 3);  // comment + header + one instance
  const auto steps = read_lines(dir_a / "table1_steps.csv");
  CHECK(steps[1] == "instance,iteration,step_norm,sigma_r,sigma_r_plus_1");

  // Summary JSON parses and repeats byte-for-byte.
  std::ifstream ja(dir_a / "table1_summary.json"), jb(dir_b / "table1_summary.json");
  REQUIRE(ja.good());
  REQUIRE(jb.good());
  std::stringstream sa, sb;
  sa << ja.rdbuf();
  sb << jb.rdbuf();
  CHECK(sa.str() == sb.str());
  const nlohmann::json summary = nlohmann::json::parse(sa.str());
  CHECK(summary["preset"] == "table1");
  CHECK(summary["cells"].size() == 1);

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("hankel preset compares newton against the alternating baseline") {
  harness::ExperimentConfig config;
  config.instances = 1;
  config.threads = 1;
  const harness::ExperimentReport report =
      harness::run_experiment(harness::Preset::hankel_table4, 17, config);
  REQUIRE(report.hankel_rows.size() == 8);  // 4 taus x 1 instance x 2 methods
  for (size_t k = 0; k < report.hankel_rows.size(); k += 2) {
    const auto& newton = report.hankel_rows[k];
    const auto& cadzow = report.hankel_rows[k + 1];
    CHECK(newton.method == "newton");
    CHECK(cadzow.method == "cadzow");
    CHECK(newton.tau == cadzow.tau);
    CHECK(newton.iterations >= 1);
    CHECK(cadzow.iterations > newton.iterations);
  }
}

}  // TEST_SUITE
