#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bcl/functionals.hpp"
#include "bcl/graph.hpp"

namespace bcl {

enum class MoveRule {
  /// Each visited vertex takes the label with the largest decrease.
  BestImprovement,
  /// Each visited vertex takes the first label (ascending) that decreases the objective.
  FirstImprovement,
};

enum class SolverMethod {
  /// TvDescent for two-way objectives, LocalSearch otherwise.
  Auto,
  LocalSearch,
  /// Descent on the total-variation relaxation with optimal thresholding,
  /// finished by local_search. Two-way objectives only.
  TvDescent,
};

struct SolverConfig {
  /// Ground-truth initial partition; when empty a random proper labelling
  /// drawn from `seed` is used.
  std::optional<Partition> initial;
  std::uint64_t seed = 0;
  std::size_t max_sweeps = 10000;
  std::size_t stall_sweeps_to_stop = 3;
  MoveRule move_rule = MoveRule::BestImprovement;
  SolverMethod method = SolverMethod::Auto;
};

struct SolveOutcome {
  Partition partition;
  CutResult result;
  std::size_t sweeps_used = 0;
  bool converged = false;
  /// Objective after each sweep, preceded by the initial objective.
  std::vector<double> history;
};

/// Largest n accepted by brute_force_optimal for two-way objectives.
inline constexpr std::size_t kBruteForceMaxTwoWay = 24;
/// Budget on K^n for multiway enumeration.
inline constexpr double kBruteForceBudget = 16777216.0;

/// Exact minimiser by enumeration of canonical labellings (each unordered
/// partition once); ties go to the lexicographically smallest labelling.
SolveOutcome brute_force_optimal(const GeometricGraph& graph, const ObjectiveKind& kind);

/// Single-vertex relabelling descent. Sweeps visit vertices in ascending
/// order; moves that would empty a class are skipped. Stops after
/// `stall_sweeps_to_stop` consecutive sweeps without a label change.
SolveOutcome local_search(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config);

/// Inner dual iterations per outer step of tv_descent.
inline constexpr std::size_t kTvInnerIterations = 200;

/// Inverse-power style descent on Cut(u)/Bal(u) over real-valued u, where
/// both terms are replaced by their Lovasz extensions. Each outer step
/// solves min TV(u) - lambda <v, u> over the unit ball (v a subgradient of
/// the balance term) by accelerated projected gradient on the dual, then
/// takes the best threshold set of u. Stops after `stall_sweeps_to_stop`
/// outer steps without a better threshold set, or after `max_sweeps` steps;
/// the best set found is then refined by local_search.
SolveOutcome tv_descent(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config);

/// Dispatches on config.method.
SolveOutcome solve(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config);

SolverMethod resolve_method(SolverMethod method, const ObjectiveKind& kind);

/// Uniformly random proper labelling (rejection sampling).
Partition random_proper_partition(std::size_t n, std::size_t classes, std::uint64_t seed);

/// Relabels classes by order of first occurrence.
Partition canonicalize(const Partition& partition);

}  // namespace bcl
