#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slra/rng.hpp"
#include "slra/solver.hpp"
#include "slra/structures.hpp"

namespace slra::harness {

/// Approximate-GCD test instance: a unit-norm pair with an exact common
/// divisor of prescribed degree, plus its noisy observation.
struct GcdInstance {
  PolyPair exact;   // (f*h, g*h) / |(f*h, g*h)|, gcd degree exactly d
  PolyPair noisy;   // exact + iid N(0, epsilon^2) per coefficient
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

/// Draws factor coefficients uniformly from [-10, 10] (degrees m-d, n-d and
/// d), normalizes the product pair to unit norm and perturbs every
/// coefficient with Gaussian noise of standard deviation epsilon.
/// Deterministic in (arguments, seed); degenerate draws (vanishing leading
/// coefficients) are retried a bounded number of times.
GcdInstance gen_gcd(int deg_f, int deg_g, int d_gcd, double epsilon,
                    std::uint64_t seed);

/// Low-rank completion test instance: a random rank-r product L*R with a
/// uniformly sampled observation mask.
struct CompletionInstance {
  DenseMatrix truth;
  CoordinateMask mask;
  int rank = 0;
  std::uint64_t seed = 0;

  double sampling_rate() const;  // |observed| / p^2
  double dof_ratio() const;      // r(2p - r) / |observed|
};

/// L is size x rank, R is rank x size, entries iid N(0, 1); the mask picks
/// `samples` coordinates uniformly without replacement. Requires
/// rank * (2*size - rank) <= samples <= size^2.
CompletionInstance gen_completion(int size, int rank, int samples,
                                  std::uint64_t seed);

/// Noisy rank-4 Hankel test instance (7x5), built from the exponential
/// signal nu_i = sum_l beta_l z_l^i with beta = (1, 2, 1/2, 3/2) and
/// z = (e^-0.1, e^-0.2, e^-0.3, e^-0.35).
struct HankelInstance {
  HankelSpec clean;
  HankelSpec noisy;   // clean + tau * (uniform [0,1] Hankel perturbation)
  double tau = 0.0;
  bool outlier = false;  // adds 0.01 to the 8th antidiagonal (nu_8) if set
  std::uint64_t seed = 0;
};

HankelInstance gen_hankel(double tau, bool outlier, std::uint64_t seed);

enum class RateClass { quadratic, linear, inconclusive };
std::string rate_class_name(RateClass c);

struct RateEstimate {
  RateClass classification = RateClass::inconclusive;
  double exponent = 0.0;  // NaN when fewer than two usable step pairs exist
  int usable_steps = 0;
};

/// Empirical convergence-order estimate from a trace: step norms are
/// normalized by |M0|, those in (10*eps, 1) are kept, and the exponent in
/// s_{i+1} ~ c * s_i^e is the median of log(s_{i+1})/log(s_i) over adjacent
/// usable pairs. Median >= 1.5 classifies quadratic, [0.8, 1.2] linear;
/// anything else, or fewer than 3 usable steps, is inconclusive.
RateEstimate rate_estimate(const ConvergenceTrace& trace);

/// Canned experiment protocols. Each preset fixes sizes, noise grids,
/// instance counts and stopping rules; `overrides` adjusts the per-cell
/// instance count (e.g. for smoke runs).
enum class Preset { table1, table2, hankel_table4, hankel_table5, completion_phase };

std::string preset_name(Preset p);
std::optional<Preset> preset_from_name(const std::string& name);

struct ExperimentConfig {
  std::optional<int> instances;  // per cell; preset default otherwise
  int threads = 0;               // worker pool cap; 0 = SLRA_THREADS or all
};

// Per-instance result rows, one flavor per experiment family. Everything is
// kept so the CSV emission (and the acceptance suite) can re-aggregate.
struct GcdCascadeRow {
  int instance = 0;
  int iterations = 0;
  std::string termination;
  double exponent = 0.0;
  std::string classification;
  bool cascade_ok = false;       // s2 <= 10 * s1^2 after normalization
  std::vector<double> steps;     // raw step norms
  std::vector<double> sigma_r;
  std::vector<double> sigma_r1;
  double initial_norm = 0.0;
};

struct GcdAccuracyRow {
  double epsilon = 0.0;
  int instance = 0;
  int iterations = 0;
  std::string termination;
  double dist = 0.0;  // |(f' - f, g' - g)| against the noisy input
};

struct HankelRow {
  double tau = 0.0;
  int instance = 0;
  std::string method;
  int iterations = 0;
  std::string termination;
  double final_sigma_r1 = 0.0;
};

struct CompletionRow {
  double sampling_rate = 0.0;
  int rank = 0;
  int instance = 0;
  int iterations = 0;
  std::string termination;
  double rel_error = 0.0;
  bool success = false;  // rel_error < 1e-3
};

struct ExperimentReport {
  Preset preset = Preset::table1;
  std::uint64_t seed = 0;
  std::vector<GcdCascadeRow> cascade_rows;      // table1
  std::vector<GcdAccuracyRow> accuracy_rows;    // table2
  std::vector<HankelRow> hankel_rows;           // hankel_table4/5
  std::vector<CompletionRow> completion_rows;   // completion_phase
  nlohmann::json summary;  // per-cell aggregates + published reference values

  /// Writes <preset>_rows.csv (plus <preset>_steps.csv for table1) and
  /// <preset>_summary.json into out_dir (created if missing). CSV schemas
  /// are fixed; only the leading timestamp comment varies between runs.
  void write_files(const std::string& out_dir) const;
};

/// Runs a preset: instances execute concurrently on a worker pool (capped by
/// config.threads or the SLRA_THREADS environment variable), each on its own
/// RNG stream derived from (seed, cell, instance), so results are
/// deterministic and independent of scheduling. Individual instance failures
/// (gap_failure, diverged) are recorded in their rows, not thrown.
ExperimentReport run_experiment(Preset preset, std::uint64_t seed,
                                const ExperimentConfig& config = {});

}  // namespace slra::harness
