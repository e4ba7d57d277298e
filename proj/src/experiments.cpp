#include "bcl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "json.hpp"

#include "bcl/config.hpp"
#include "bcl/error.hpp"
#include "bcl/graph.hpp"
#include "bcl/matching.hpp"

namespace bcl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream tags so the sampler, the off-component assignment and random
// initialisation draw from unrelated sequences.
constexpr std::uint64_t kAssignStream = 0xa5a5'0001'0000'0000ULL;
constexpr std::uint64_t kInitStream = 0xa5a5'0002'0000'0000ULL;

bool has_oracle(const ExperimentConfig& config) {
  return config.objective.two_way() && config.domain.dim() == 2;
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// m with m^d == n, if any.
std::optional<std::size_t> grid_side(std::size_t n, std::size_t dim) {
  auto m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim))));
  for (std::size_t c = m > 0 ? m - 1 : 0; c <= m + 1; ++c) {
    std::size_t p = 1;
    for (std::size_t k = 0; k < dim; ++k) p *= c;
    if (p == n) return c;
  }
  return std::nullopt;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return kNaN;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw InvalidArgument("n_values must not be empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 2) throw InvalidArgument("n_values entries must be >= 2");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InvalidArgument("n_values must be strictly increasing");
    if (n_values[i] < objective.classes()) throw InvalidArgument("n_values entries must be >= K");
  }
  if (trials_per_n < 1) throw InvalidArgument("trials_per_n must be >= 1");
  if (solver.stall_sweeps_to_stop < 1) throw InvalidArgument("stall_sweeps_to_stop must be >= 1");
  if (solver.method == SolverMethod::TvDescent && !objective.two_way()) {
    throw InvalidArgument("solver method tv_descent needs a two-way objective");
  }
  if (solver.init == InitKind::GroundTruth && !has_oracle(*this)) {
    throw InvalidArgument("ground_truth init needs a two-way objective on a planar domain");
  }
  if (objective.classes() > 8) throw InvalidArgument("at most 8 classes are supported");
  if (diagnostics.bottleneck) {
    for (std::size_t n : n_values) {
      if (!grid_side(n, domain.dim())) throw InvalidArgument("bottleneck diagnostic needs every n to be a perfect d-th power");
    }
  }
}

double TrialRecord::degree_ratio() const {
  return deg_min == 0 ? std::numeric_limits<double>::infinity()
                      : static_cast<double>(deg_max) / static_cast<double>(deg_min);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::size_t trial) {
  return base_seed ^ mix_seed(mix_seed(static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(trial));
}

Partition ground_truth_partition(const PointCloud& cloud, const ContinuumCut& cut) {
  std::vector<std::uint32_t> labels(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    labels[i] = cut.in_a(cloud.coord(i, 0), cloud.coord(i, 1)) ? 0 : 1;
  }
  return Partition(std::move(labels), 2);
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial_index) {
  const std::uint64_t seed = trial_seed(config.base_seed, n, trial_index);
  const PointCloud cloud = sample_uniform(config.domain, n, seed);
  TrialRecord rec = solve_sample(config, cloud, config.regime.epsilon(n), seed).record;
  rec.trial = trial_index;
  return rec;
}

TrialSolution solve_sample(const ExperimentConfig& config, const PointCloud& cloud, double eps, std::uint64_t seed) {
  TrialSolution sol;
  TrialRecord& rec = sol.record;
  const std::size_t n = cloud.size();
  rec.n = n;
  rec.seed = seed;
  const std::size_t k = config.objective.classes();
  const GeometricGraph graph = build_graph(cloud, eps, config.kernel);

  if (config.diagnostics.degree_stats) {
    const DegreeStats ds = degree_regularity(graph);
    rec.deg_max = ds.max_degree;
    rec.deg_min = ds.min_degree;
  }

  if (config.diagnostics.bottleneck) {
    const auto side = grid_side(n, config.domain.dim());
    if (!side) throw InvalidArgument("bottleneck diagnostic needs n to be a perfect d-th power");
    rec.bottleneck_normalized =
        bottleneck_match(cloud, cell_center_grid(config.domain, *side)).normalized;
  }

  std::optional<Partition>& truth = sol.truth;
  if (has_oracle(config)) {
    sol.cut = optimal_axis_cut(config.domain, config.objective);
    truth = ground_truth_partition(cloud, *sol.cut);
  }

  // Vertices handed to the solver; all of them unless we restrict to the
  // giant component of a disconnected graph.
  std::vector<std::uint32_t> solved;
  bool restricted = false;
  if (config.diagnostics.giant_component) {
    const ComponentLabeling cc = connected_components(graph);
    rec.giant_fraction = giant_component_fraction(cc, n);
    if (cc.count() > 1) {
      restricted = true;
      const auto giant = cc.largest();
      for (std::size_t v = 0; v < n; ++v) {
        if (cc.component_id[v] == giant) solved.push_back(static_cast<std::uint32_t>(v));
      }
    }
  } else {
    rec.giant_fraction = kNaN;
  }

  std::optional<Subgraph> sub;
  if (restricted) {
    if (solved.size() < 2 * k) {
      rec.valid = false;
      return sol;
    }
    sub = induced_subgraph(graph, solved);
  }
  const GeometricGraph& target = sub ? sub->graph : graph;

  SolverConfig sc;
  sc.max_sweeps = config.solver.max_sweeps;
  sc.stall_sweeps_to_stop = config.solver.stall_sweeps_to_stop;
  sc.move_rule = config.solver.move_rule;
  sc.method = config.solver.method;
  sc.seed = mix_seed(rec.seed ^ kInitStream);
  if (config.solver.init == InitKind::GroundTruth) {
    if (sub) {
      std::vector<std::uint32_t> labels(solved.size());
      for (std::size_t t = 0; t < solved.size(); ++t) labels[t] = truth->label(solved[t]);
      sc.initial = Partition(std::move(labels), k);
    } else {
      sc.initial = *truth;
    }
    if (!sc.initial->proper()) {
      rec.valid = false;
      return sol;
    }
  }

  const SolveOutcome outcome = solve(target, config.objective, sc);
  rec.objective = outcome.result.objective;
  rec.rescaled = config.diagnostics.rescaled_constant ? outcome.result.rescaled_constant : kNaN;
  rec.sweeps = outcome.sweeps_used;

  std::vector<std::uint32_t> labels(n);
  if (sub) {
    std::mt19937_64 stream(mix_seed(rec.seed ^ kAssignStream));
    std::vector<bool> in_giant(n, false);
    for (std::size_t t = 0; t < solved.size(); ++t) {
      labels[solved[t]] = outcome.partition.label(t);
      in_giant[solved[t]] = true;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_giant[v]) {
        const unsigned __int128 wide = static_cast<unsigned __int128>(stream()) * k;
        labels[v] = static_cast<std::uint32_t>(wide >> 64);
      }
    }
  } else {
    labels.assign(outcome.partition.labels().begin(), outcome.partition.labels().end());
  }
  sol.partition = Partition(std::move(labels), k);
  const Partition& full = *sol.partition;
  if (truth) {
    rec.e_n_raw = raw_disagreement(full, *truth);
    rec.e_n_perm = misclassification_error(full, *truth);
  } else {
    rec.e_n_raw = kNaN;
    rec.e_n_perm = kNaN;
  }
  return sol;
}

std::vector<SizeSummary> summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials) {
  std::vector<SizeSummary> out;
  for (std::size_t n : config.n_values) {
    SizeSummary s;
    s.n = n;
    std::vector<double> raw, perm, obj, resc, giant, ratio, dmax, dmin, sweeps, bneck;
    for (const TrialRecord& t : trials) {
      if (t.n != n) continue;
      ++s.trials;
      if (!t.valid) {
        ++s.invalid;
        continue;
      }
      ++s.valid;
      raw.push_back(t.e_n_raw);
      perm.push_back(t.e_n_perm);
      obj.push_back(t.objective);
      resc.push_back(t.rescaled);
      giant.push_back(t.giant_fraction);
      dmax.push_back(static_cast<double>(t.deg_max));
      dmin.push_back(static_cast<double>(t.deg_min));
      sweeps.push_back(static_cast<double>(t.sweeps));
      bneck.push_back(t.bottleneck_normalized);
      if (t.deg_min > 0) {
        ratio.push_back(t.degree_ratio());
      } else {
        ++s.infinite_deg_ratio;
      }
    }
    s.mean_e_n_raw = mean_of(raw);
    s.stderr_e_n_raw = stderr_of(raw);
    s.mean_e_n_perm = mean_of(perm);
    s.stderr_e_n_perm = stderr_of(perm);
    s.mean_objective = mean_of(obj);
    s.mean_rescaled = mean_of(resc);
    s.mean_giant_fraction = mean_of(giant);
    s.mean_deg_ratio = mean_of(ratio);
    s.mean_deg_max = mean_of(dmax);
    s.mean_deg_min = mean_of(dmin);
    s.mean_sweeps = mean_of(sweeps);
    s.mean_bottleneck_normalized = mean_of(bneck);
    out.push_back(s);
  }
  return out;
}

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return {kNaN, kNaN};
  const double mx = mean_of(lx), my = mean_of(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) return {kNaN, kNaN};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ExperimentReport run_experiment(const ExperimentConfig& config, std::size_t threads) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t n : config.n_values) {
    for (std::size_t t = 0; t < config.trials_per_n; ++t) work.emplace_back(n, t);
  }
  report.trials.resize(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= work.size() || failed.load()) return;
      try {
        report.trials[idx] = run_trial(config, work[idx].first, work[idx].second);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, work.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  report.summaries = summarize(config, report.trials);
  std::vector<double> ns, es;
  for (const SizeSummary& s : report.summaries) {
    ns.push_back(static_cast<double>(s.n));
    es.push_back(s.mean_e_n_perm);
  }
  const LineFit fit = fit_loglog(ns, es);
  report.loglog_slope = fit.slope;
  report.loglog_intercept = fit.intercept;
  return report;
}

std::vector<RescaledPoint> rescaled_constant_convergence(const ExperimentConfig& config, std::size_t threads) {
  if (!config.objective.two_way()) throw InvalidArgument("rescaled constants are defined for two-way objectives");
  ExperimentConfig c = config;
  c.diagnostics.rescaled_constant = true;
  const ExperimentReport report = run_experiment(c, threads);
  const double target = rescaled_limit_target(c.domain, c.kernel, c.objective, c.domain.dim());
  std::vector<RescaledPoint> out;
  for (const SizeSummary& s : report.summaries) out.push_back({s.n, s.mean_rescaled, target});
  return out;
}

void write_trials_csv(const ExperimentReport& report, std::ostream& out) {
  const Diagnostics& diag = report.config.diagnostics;
  out << "n,trial,seed,e_n_raw,e_n_perm,objective,rescaled,giant_fraction,deg_max,deg_min,sweeps,valid\n";
  for (const TrialRecord& t : report.trials) {
    out << t.n << ',' << t.trial << ',' << t.seed << ',';
    if (t.valid) {
      out << fmt_double(t.e_n_raw) << ',' << fmt_double(t.e_n_perm) << ',' << fmt_double(t.objective) << ','
          << fmt_double(t.rescaled) << ',';
    } else {
      out << "nan,nan,nan,nan,";
    }
    out << fmt_double(t.giant_fraction) << ',';
    if (diag.degree_stats) {
      out << t.deg_max << ',' << t.deg_min << ',';
    } else {
      out << "nan,nan,";
    }
    out << t.sweeps << ',' << (t.valid ? 1 : 0) << '\n';
  }
}

void write_summary_csv(const ExperimentReport& report, std::ostream& out) {
  const Diagnostics& diag = report.config.diagnostics;
  out << "n,trials,valid,invalid,mean_e_n_raw,stderr_e_n_raw,mean_e_n_perm,stderr_e_n_perm,mean_objective";
  if (diag.rescaled_constant) out << ",mean_rescaled";
  if (diag.giant_component) out << ",mean_giant_fraction";
  if (diag.degree_stats) out << ",mean_deg_ratio,infinite_deg_ratio,mean_deg_max,mean_deg_min";
  if (diag.bottleneck) out << ",mean_bottleneck_normalized";
  out << ",mean_sweeps\n";
  for (const SizeSummary& s : report.summaries) {
    out << s.n << ',' << s.trials << ',' << s.valid << ',' << s.invalid << ',' << fmt_double(s.mean_e_n_raw) << ','
        << fmt_double(s.stderr_e_n_raw) << ',' << fmt_double(s.mean_e_n_perm) << ','
        << fmt_double(s.stderr_e_n_perm) << ',' << fmt_double(s.mean_objective);
    if (diag.rescaled_constant) out << ',' << fmt_double(s.mean_rescaled);
    if (diag.giant_component) out << ',' << fmt_double(s.mean_giant_fraction);
    if (diag.degree_stats) {
      out << ',' << fmt_double(s.mean_deg_ratio) << ',' << s.infinite_deg_ratio << ','
          << fmt_double(s.mean_deg_max) << ',' << fmt_double(s.mean_deg_min);
    }
    if (diag.bottleneck) out << ',' << fmt_double(s.mean_bottleneck_normalized);
    out << ',' << fmt_double(s.mean_sweeps) << '\n';
  }
}

std::string report_json(const ExperimentReport& report) {
  using nlohmann::json;
  auto num = [](double v) -> json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  json j;
  j["config"] = config_to_json(report.config);
  j["loglog_slope"] = num(report.loglog_slope);
  j["loglog_intercept"] = num(report.loglog_intercept);
  if (has_oracle(report.config)) {
    j["rescaled_target"] = rescaled_limit_target(report.config.domain, report.config.kernel,
                                                 report.config.objective, report.config.domain.dim());
  }
  json rows = json::array();
  for (const SizeSummary& s : report.summaries) {
    rows.push_back({{"n", s.n},
                    {"trials", s.trials},
                    {"valid", s.valid},
                    {"invalid", s.invalid},
                    {"mean_e_n_raw", num(s.mean_e_n_raw)},
                    {"mean_e_n_perm", num(s.mean_e_n_perm)},
                    {"stderr_e_n_perm", num(s.stderr_e_n_perm)},
                    {"mean_objective", num(s.mean_objective)},
                    {"mean_rescaled", num(s.mean_rescaled)},
                    {"mean_giant_fraction", num(s.mean_giant_fraction)},
                    {"mean_deg_ratio", num(s.mean_deg_ratio)}});
  }
  j["summaries"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace bcl
