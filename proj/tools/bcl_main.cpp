// bcl: run experiment configurations, single solves, and SVG plots.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "bcl/config.hpp"
#include "bcl/error.hpp"
#include "bcl/experiments.hpp"
#include "bcl/svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

// Raised for problems the user can fix on the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag) return std::max<std::size_t>(1, *flag);
  if (const char* env = std::getenv("BCL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("BCL_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct RunArgs {
  std::string config;
  bool force = false;
  std::optional<std::size_t> threads;
  std::string out;
};

int cmd_run(const RunArgs& a) {
  const fs::path config_path(a.config);
  const std::string text = read_file(config_path);
  bcl::ExperimentConfig config;
  try {
    config = bcl::parse_config(text);
  } catch (const bcl::ConfigError& e) {
    std::cerr << config_path.string() << ": " << e.what() << '\n';
    return kUsageError;
  }
  const fs::path dir = a.out.empty() ? config_path.parent_path() : fs::path(a.out);
  const std::string stem = config_path.stem().string();
  const fs::path trials = dir / (stem + "_trials.csv");
  const fs::path summary = dir / (stem + "_summary.csv");
  const fs::path report = dir / (stem + "_report.json");
  if (!a.force) {
    for (const fs::path& p : {trials, summary, report}) {
      if (fs::exists(p)) {
        std::cerr << p.string() << " exists; pass --force to overwrite\n";
        return kUsageError;
      }
    }
  }
  if (!dir.empty()) fs::create_directories(dir);

  const bcl::ExperimentReport r = bcl::run_experiment(config, resolve_threads(a.threads));
  std::ostringstream t, s;
  bcl::write_trials_csv(r, t);
  bcl::write_summary_csv(r, s);
  write_file(trials, t.str());
  write_file(summary, s.str());
  write_file(report, bcl::report_json(r) + "\n");

  std::cout << "n\ttrials\tvalid\tmean_e_n\tmean_objective\n";
  for (const bcl::SizeSummary& row : r.summaries) {
    std::cout << row.n << '\t' << row.trials << '\t' << row.valid << '\t' << fmt(row.mean_e_n_perm) << '\t'
              << fmt(row.mean_objective) << '\n';
  }
  if (std::isfinite(r.loglog_slope)) std::cout << "loglog slope " << fmt(r.loglog_slope) << '\n';
  std::cout << "wrote " << trials.string() << ", " << summary.string() << ", " << report.string() << '\n';
  return 0;
}

struct SolveArgs {
  std::string domain = "1x1.5";
  std::size_t n = 1000;
  std::optional<double> epsilon;
  std::optional<std::string> regime;
  std::string objective = "cheeger";
  std::string kernel = "indicator";
  std::uint64_t seed = 1;
  std::optional<std::string> init;
  std::string method = "auto";
  std::string partition;
  std::string svg;
};

std::string partition_csv(const bcl::PointCloud& cloud, const bcl::Partition& p, const bcl::ExperimentConfig& c,
                          const std::optional<bcl::ContinuumCut>& cut) {
  std::ostringstream out;
  out << "#domain " << c.domain.label() << '\n';
  if (cut) {
    out << "#cut " << (cut->line.orientation == bcl::LineOrientation::Horizontal ? "horizontal" : "vertical") << ' '
        << fmt(cut->line.position) << '\n';
  }
  out << "x,y,label\n";
  char buf[64];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%u", cloud.coord(i, 0), cloud.coord(i, 1), p.label(i));
    out << buf << '\n';
  }
  return out.str();
}

int cmd_solve(const SolveArgs& a) {
  bcl::ExperimentConfig c;
  c.domain = bcl::RectDomain::parse(a.domain);
  c.objective = bcl::ObjectiveKind::parse(a.objective);
  c.kernel = bcl::Kernel::parse(a.kernel);
  if (a.epsilon.has_value() == a.regime.has_value()) throw UsageError("give exactly one of --epsilon and --regime");
  double eps = 0.0;
  if (a.epsilon) {
    eps = *a.epsilon;
  } else {
    c.regime = bcl::ScalingRegime::parse(*a.regime);
    eps = c.regime.epsilon(a.n);
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("epsilon must be positive and finite");
  const bool oracle = c.objective.two_way() && c.domain.dim() == 2;
  const std::string init = a.init.value_or(oracle ? "ground_truth" : "random");
  if (init == "ground_truth") {
    c.solver.init = bcl::InitKind::GroundTruth;
  } else if (init == "random") {
    c.solver.init = bcl::InitKind::Random;
  } else {
    throw UsageError("--init must be ground_truth or random");
  }
  if (a.method == "local_search") {
    c.solver.method = bcl::SolverMethod::LocalSearch;
  } else if (a.method == "tv_descent") {
    c.solver.method = bcl::SolverMethod::TvDescent;
  } else if (a.method != "auto") {
    throw UsageError("--method must be auto, local_search or tv_descent");
  }
  c.n_values = {a.n};
  c.validate();
  if ((!a.partition.empty() || !a.svg.empty()) && c.domain.dim() != 2) {
    throw UsageError("partition output needs a planar domain");
  }

  const bcl::PointCloud cloud = bcl::sample_uniform(c.domain, a.n, a.seed);
  const bcl::TrialSolution sol = bcl::solve_sample(c, cloud, eps, a.seed);
  const bcl::TrialRecord& r = sol.record;
  if (!r.valid) {
    std::cerr << "trial is degenerate: the giant component cannot hold " << c.objective.classes()
              << " classes with the ground-truth split\n";
    return kRuntimeFailure;
  }
  std::cout << "epsilon " << fmt(eps) << '\n';
  std::cout << "objective " << fmt(r.objective) << '\n';
  std::cout << "rescaled " << fmt(r.rescaled) << '\n';
  if (sol.truth) {
    std::cout << "e_n " << fmt(r.e_n_perm) << '\n';
    std::cout << "e_n_raw " << fmt(r.e_n_raw) << '\n';
  }
  std::cout << "giant_fraction " << fmt(r.giant_fraction) << '\n';

  if (!a.partition.empty() || !a.svg.empty()) {
    const std::string csv = partition_csv(cloud, *sol.partition, c, sol.cut);
    if (!a.partition.empty()) write_file(a.partition, csv);
    if (!a.svg.empty()) {
      std::istringstream in(csv);
      write_file(a.svg, bcl::render_plot(bcl::PlotKind::PartitionScatter, bcl::read_csv(in)).svg);
    }
  }
  return 0;
}

struct PlotArgs {
  std::string kind;
  std::string input;
  std::string output;
};

int cmd_plot(const PlotArgs& a) {
  bcl::PlotSpec spec{bcl::parse_plot_kind(a.kind), a.input, a.output};
  std::ifstream in(spec.input, std::ios::binary);
  if (!in) throw UsageError("cannot read " + spec.input);
  const bcl::Plot plot = bcl::render_plot(spec.kind, bcl::read_csv(in));
  write_file(spec.output, plot.svg);
  if (plot.fit) std::cout << "slope " << fmt(plot.fit->slope) << '\n';
  std::cout << "wrote " << spec.output << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced graph cuts on random geometric graphs"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment configuration");
  run_cmd->add_option("--config", run.config, "JSON configuration")->required();
  run_cmd->add_flag("--force", run.force, "Overwrite existing outputs");
  run_cmd->add_option("--threads", run.threads, "Worker threads (default: BCL_THREADS, then all cores)");
  run_cmd->add_option("--out", run.out, "Output directory (default: next to the config)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one sampled instance");
  solve_cmd->add_option("--domain", solve.domain, "Rectangle WxH")->capture_default_str();
  solve_cmd->add_option("--n", solve.n, "Sample size")->capture_default_str();
  solve_cmd->add_option("--epsilon", solve.epsilon, "Connectivity radius");
  solve_cmd->add_option("--regime", solve.regime, "power:P or connectivity:F");
  solve_cmd->add_option("--objective", solve.objective, "cheeger, ratio or multiway:K")->capture_default_str();
  solve_cmd->add_option("--kernel", solve.kernel, "indicator or gaussian")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Sample seed")->capture_default_str();
  solve_cmd->add_option("--init", solve.init, "ground_truth or random");
  solve_cmd->add_option("--method", solve.method, "auto, local_search or tv_descent")->capture_default_str();
  solve_cmd->add_option("--partition", solve.partition, "Write x,y,label CSV");
  solve_cmd->add_option("--svg", solve.svg, "Write a partition scatter SVG");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render an SVG plot from CSV output");
  plot_cmd->add_option("--kind", plot.kind, "loglog, degree, giant or scatter")->required();
  plot_cmd->add_option("--input", plot.input, "Summary or partition CSV")->required();
  plot_cmd->add_option("--output", plot.output, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    return cmd_plot(plot);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const bcl::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}
