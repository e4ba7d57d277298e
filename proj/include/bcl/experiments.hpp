#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bcl/continuum.hpp"
#include "bcl/functionals.hpp"
#include "bcl/geometry.hpp"
#include "bcl/solvers.hpp"

namespace bcl {

enum class InitKind { GroundTruth, Random };

struct SolverSettings {
  InitKind init = InitKind::GroundTruth;
  std::size_t max_sweeps = 10000;
  std::size_t stall_sweeps_to_stop = 3;
  MoveRule move_rule = MoveRule::BestImprovement;
  SolverMethod method = SolverMethod::Auto;
};

struct Diagnostics {
  bool degree_stats = true;
  bool giant_component = true;
  bool rescaled_constant = true;
  bool bottleneck = false;
};

struct ExperimentConfig {
  RectDomain domain{1.0, 1.5};
  ObjectiveKind objective = ObjectiveKind::cheeger();
  Kernel kernel = Kernel::indicator();
  ScalingRegime regime = ScalingRegime::power(0.3);
  std::vector<std::size_t> n_values{1000};
  std::size_t trials_per_n = 1;
  std::uint64_t base_seed = 1;
  SolverSettings solver;
  Diagnostics diagnostics;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

struct TrialRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  /// NaN when the objective has no continuum ground truth.
  double e_n_raw = 0.0;
  double e_n_perm = 0.0;
  double objective = 0.0;
  double rescaled = 0.0;
  double giant_fraction = 1.0;
  std::size_t deg_max = 0;
  std::size_t deg_min = 0;
  std::size_t sweeps = 0;
  bool valid = true;
  /// Normalised bottleneck distance to the reference grid (bottleneck diagnostic).
  double bottleneck_normalized = std::numeric_limits<double>::quiet_NaN();

  double degree_ratio() const;
};

struct SizeSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t valid = 0;
  std::size_t invalid = 0;
  double mean_e_n_raw = 0.0;
  double stderr_e_n_raw = 0.0;
  double mean_e_n_perm = 0.0;
  double stderr_e_n_perm = 0.0;
  double mean_objective = 0.0;
  double mean_rescaled = 0.0;
  double mean_giant_fraction = 0.0;
  /// Mean of max/min over trials with an isolated-vertex-free graph.
  double mean_deg_ratio = 0.0;
  std::size_t infinite_deg_ratio = 0;
  double mean_deg_max = 0.0;
  double mean_deg_min = 0.0;
  double mean_sweeps = 0.0;
  double mean_bottleneck_normalized = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  std::vector<SizeSummary> summaries;
  /// Least-squares slope of log(mean e_n) against log n; NaN when undefined.
  double loglog_slope = 0.0;
  double loglog_intercept = 0.0;
};

/// Seed of trial `trial` at sample size n.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::size_t trial);

/// Ground truth A ∩ X_n (class 0 = A) for the optimal continuum cut.
Partition ground_truth_partition(const PointCloud& cloud, const ContinuumCut& cut);

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial_index);

struct TrialSolution {
  TrialRecord record;
  /// Labels on the whole sample; empty for an invalid trial.
  std::optional<Partition> partition;
  std::optional<Partition> truth;
  std::optional<ContinuumCut> cut;
};

/// The per-trial pipeline of run_trial on a given sample and radius:
/// graph construction, diagnostics, giant-component restriction and solve.
/// `seed` drives the random streams (off-component labels, random init).
TrialSolution solve_sample(const ExperimentConfig& config, const PointCloud& cloud, double eps, std::uint64_t seed);

/// Runs every (n, trial) pair on `threads` workers; output order is fixed.
ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

std::vector<SizeSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
/// Ordinary least squares of log y on log x; pairs with y <= 0 are dropped.
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RescaledPoint {
  std::size_t n = 0;
  double mean_rescaled = 0.0;
  double target = 0.0;
};

std::vector<RescaledPoint> rescaled_constant_convergence(const ExperimentConfig& config, std::size_t threads = 1);

/// CSV and JSON serialisation. Column order is fixed.
void write_trials_csv(const ExperimentReport& report, std::ostream& out);
void write_summary_csv(const ExperimentReport& report, std::ostream& out);
std::string report_json(const ExperimentReport& report);

}  // namespace bcl
