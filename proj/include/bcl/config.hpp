#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "bcl/experiments.hpp"

namespace bcl {

/// Configuration problem, with the 1-based source line it refers to
/// (0 when no line applies).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates an experiment configuration. Unknown keys are errors.
///
///   {
///     "domain": "1x1.5",
///     "objective": "cheeger" | "ratio" | "multiway:K",
///     "kernel": "indicator" | "gaussian",
///     "regime": "power:0.3" | "connectivity:2",
///     "n_values": [1000, 2000],
///     "trials_per_n": 200,
///     "base_seed": 1,
///     "solver": {"init": "ground_truth" | "random", "max_sweeps": 10000,
///                "stall_sweeps_to_stop": 3, "move_rule": "best" | "first",
///                "method": "auto" | "local_search" | "tv_descent"},
///     "diagnostics": {"degree_stats": true, "giant_component": true,
///                     "rescaled_constant": true, "bottleneck": false}
///   }
///
/// Every key except "n_values" is optional and defaults to the values above.
ExperimentConfig parse_config(const std::string& text);

nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace bcl
