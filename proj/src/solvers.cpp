#include "bcl/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "bcl/error.hpp"

namespace bcl {

namespace {

// Depth-first enumeration of restricted-growth labellings: vertex v may take
// any label already used by 0..v-1 or the next unused one. This visits every
// unordered partition into exactly K nonempty classes once, in lexicographic
// order of its canonical labelling.
class Enumerator {
 public:
  Enumerator(const GeometricGraph& graph, const ObjectiveKind& kind)
      : graph_(graph), kind_(kind), n_(graph.size()), k_(kind.classes()),
        labels_(n_, 0), counts_(k_, 0), cuts_(k_, 0.0) {}

  void run() {
    labels_[0] = 0;
    counts_[0] = 1;
    descend(1, 1);
  }

  bool found() const { return found_; }
  const std::vector<std::uint32_t>& best() const { return best_; }

 private:
  void descend(std::size_t v, std::size_t used) {
    if (v == n_) {
      if (used != k_) return;
      const double value = kind_.evaluate(cuts_, counts_, n_);
      if (!found_ || value < best_value_) {
        found_ = true;
        best_value_ = value;
        best_ = labels_;
      }
      return;
    }
    const std::size_t remaining = n_ - v - 1;
    const std::size_t top = std::min(used, k_ - 1);
    for (std::size_t l = 0; l <= top; ++l) {
      const std::size_t next_used = std::max(used, l + 1);
      if (remaining < k_ - next_used) continue;
      assign(v, static_cast<std::uint32_t>(l), +1.0);
      descend(v + 1, next_used);
      assign(v, static_cast<std::uint32_t>(l), -1.0);
    }
  }

  void assign(std::size_t v, std::uint32_t l, double sign) {
    labels_[v] = l;
    if (sign > 0) {
      ++counts_[l];
    } else {
      --counts_[l];
    }
    const auto nbrs = graph_.neighbors(v);
    const auto wts = graph_.neighbor_weights(v);
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      const std::uint32_t u = nbrs[p];
      if (u >= v) break;  // rows are ascending
      if (labels_[u] != l) {
        cuts_[l] += sign * wts[p];
        cuts_[labels_[u]] += sign * wts[p];
      }
    }
  }

  const GeometricGraph& graph_;
  const ObjectiveKind& kind_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::size_t> counts_;
  std::vector<double> cuts_;
  bool found_ = false;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_;
};

std::uint32_t draw_label(std::mt19937_64& engine, std::size_t classes) {
  const unsigned __int128 wide = static_cast<unsigned __int128>(engine()) * classes;
  return static_cast<std::uint32_t>(wide >> 64);
}

Partition starting_partition(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config) {
  const std::size_t n = graph.size();
  const std::size_t k = kind.classes();
  Partition start = config.initial ? *config.initial : random_proper_partition(n, k, config.seed);
  if (start.size() != n) throw InvalidArgument("initial partition does not match the graph");
  if (start.classes() != k) throw InvalidArgument("initial partition has the wrong class count");
  if (!start.proper()) throw ImproperPartition("initial partition has an empty class");
  return start;
}

struct Threshold {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> labels;
};

// Best two-way split {u > t}, {u <= t} over all thresholds t between
// distinct values of u. Class 0 is the upper set.
Threshold best_threshold(const GeometricGraph& graph, const ObjectiveKind& kind, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return u[a] > u[b] || (u[a] == u[b] && a < b); });
  std::vector<char> upper(n, 0);
  std::vector<double> cuts(2, 0.0);
  std::vector<std::size_t> counts(2, 0);
  double cut = 0.0;
  std::size_t best_size = 0;
  Threshold out;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const std::uint32_t v = order[m];
    upper[v] = 1;
    const auto nbrs = graph.neighbors(v);
    const auto wts = graph.neighbor_weights(v);
    for (std::size_t p = 0; p < nbrs.size(); ++p) cut += upper[nbrs[p]] ? -wts[p] : wts[p];
    if (u[order[m + 1]] == u[v]) continue;
    cuts = {cut, cut};
    counts = {m + 1, n - m - 1};
    const double value = kind.evaluate(cuts, counts, n);
    if (value < out.value) {
      out.value = value;
      best_size = m + 1;
    }
  }
  if (best_size > 0) {
    out.labels.assign(n, 1);
    for (std::size_t m = 0; m < best_size; ++m) out.labels[order[m]] = 0;
  }
  return out;
}

// Subgradient of the Lovasz extension of the balance term at u. The
// extension is positively homogeneous, so its value is <v, u>.
std::vector<double> balance_subgradient(const ObjectiveKind& kind, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> v(n, 0.0);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return u[a] < u[b]; });
  if (kind.kind() == ObjectiveKind::Kind::CheegerTwoWay) {
    // min(|Y|, |Y^c|) extends to sum |u_i - median|.
    const double median = u[order[(n - 1) / 2]];
    std::size_t above = 0, below = 0, at = 0;
    for (double x : u) {
      if (x > median) {
        ++above;
      } else if (x < median) {
        ++below;
      } else {
        ++at;
      }
    }
    const double tie = std::clamp((static_cast<double>(below) - static_cast<double>(above)) / static_cast<double>(at), -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] > median ? 1.0 : (u[i] < median ? -1.0 : tie);
  } else {
    // 2|Y||Y^c| extends to 2 sum_{i<j} |u_i - u_j|; tied values share the mean rank.
    for (std::size_t s = 0; s < n;) {
      std::size_t e = s;
      while (e < n && u[order[e]] == u[order[s]]) ++e;
      const double value = 2.0 * (static_cast<double>(s) - static_cast<double>(n - e));
      for (std::size_t m = s; m < e; ++m) v[order[m]] = value;
      s = e;
    }
  }
  return v;
}

}  // namespace

SolveOutcome brute_force_optimal(const GeometricGraph& graph, const ObjectiveKind& kind) {
  const std::size_t n = graph.size();
  const std::size_t k = kind.classes();
  if (n < k) throw InvalidArgument("graph has fewer vertices than classes");
  if (kind.two_way()) {
    if (n > kBruteForceMaxTwoWay) throw BudgetExceeded("two-way enumeration is limited to n <= 24");
  } else if (std::pow(static_cast<double>(k), static_cast<double>(n)) > kBruteForceBudget) {
    throw BudgetExceeded("multiway enumeration exceeds the K^n <= 2^24 budget");
  }
  Enumerator e(graph, kind);
  e.run();
  SolveOutcome out;
  out.partition = Partition(e.best(), k);
  out.result = objective(graph, out.partition, kind);
  out.converged = true;
  out.history = {out.result.objective};
  return out;
}

Partition random_proper_partition(std::size_t n, std::size_t classes, std::uint64_t seed) {
  if (n < classes) throw InvalidArgument("cannot fill every class with fewer vertices than classes");
  std::mt19937_64 engine(seed);
  std::vector<std::uint32_t> labels(n);
  for (;;) {
    for (auto& l : labels) l = draw_label(engine, classes);
    Partition p(labels, classes);
    if (p.proper()) return p;
  }
}

Partition canonicalize(const Partition& partition) {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> map(partition.classes(), unset);
  std::uint32_t next = 0;
  std::vector<std::uint32_t> labels(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    auto& m = map[partition.label(i)];
    if (m == unset) m = next++;
    labels[i] = m;
  }
  return Partition(std::move(labels), partition.classes());
}

SolveOutcome local_search(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config) {
  if (config.stall_sweeps_to_stop < 1) throw InvalidArgument("stall_sweeps_to_stop must be >= 1");
  const std::size_t n = graph.size();
  const std::size_t k = kind.classes();
  const Partition start = starting_partition(graph, kind, config);

  std::vector<std::uint32_t> labels(start.labels().begin(), start.labels().end());
  std::vector<std::size_t> counts(start.counts().begin(), start.counts().end());
  std::vector<double> cuts = cuts_by_class(graph, start);
  // Weight from each vertex into each class.
  std::vector<double> link(n * k, 0.0);
  for (const Edge& e : graph.edges()) {
    link[e.i * k + labels[e.j]] += e.w;
    link[e.j * k + labels[e.i]] += e.w;
  }

  SolveOutcome out;
  double current = kind.evaluate(cuts, counts, n);
  out.history.push_back(current);
  std::size_t idle = 0;

  while (out.sweeps_used < config.max_sweeps) {
    ++out.sweeps_used;
    std::size_t moves = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t a = labels[v];
      if (counts[a] <= 1) continue;
      const double* vl = &link[v * k];
      const double degree = graph.weighted_degree(v);
      const double keep_a = cuts[a];
      const double threshold = current - 1e-12 * std::max(1.0, std::abs(current));
      double best_value = threshold;
      std::size_t best_label = k;
      for (std::size_t b = 0; b < k; ++b) {
        if (b == a) continue;
        const double keep_b = cuts[b];
        cuts[a] = keep_a + 2.0 * vl[a] - degree;
        cuts[b] = keep_b + degree - 2.0 * vl[b];
        --counts[a];
        ++counts[b];
        const double value = kind.evaluate(cuts, counts, n);
        ++counts[a];
        --counts[b];
        cuts[a] = keep_a;
        cuts[b] = keep_b;
        if (value < best_value) {
          best_value = value;
          best_label = b;
          if (config.move_rule == MoveRule::FirstImprovement) break;
        }
      }
      if (best_label == k) continue;
      const std::size_t b = best_label;
      cuts[a] = keep_a + 2.0 * vl[a] - degree;
      cuts[b] = cuts[b] + degree - 2.0 * vl[b];
      --counts[a];
      ++counts[b];
      labels[v] = static_cast<std::uint32_t>(b);
      const auto nbrs = graph.neighbors(v);
      const auto wts = graph.neighbor_weights(v);
      for (std::size_t p = 0; p < nbrs.size(); ++p) {
        link[nbrs[p] * k + a] -= wts[p];
        link[nbrs[p] * k + b] += wts[p];
      }
      current = best_value;
      ++moves;
    }
    // Re-evaluate from the tracked cuts so drift cannot accumulate in `current`.
    current = kind.evaluate(cuts, counts, n);
    out.history.push_back(current);
    idle = moves == 0 ? idle + 1 : 0;
    if (idle >= config.stall_sweeps_to_stop) {
      out.converged = true;
      break;
    }
  }
  out.partition = Partition(std::move(labels), k);
  out.result = objective(graph, out.partition, kind);
  return out;
}

SolveOutcome tv_descent(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config) {
  if (!kind.two_way()) throw InvalidArgument("tv_descent supports two-way objectives only");
  if (config.stall_sweeps_to_stop < 1) throw InvalidArgument("stall_sweeps_to_stop must be >= 1");
  const Partition start = starting_partition(graph, kind, config);
  const std::size_t n = graph.size();
  const auto& edges = graph.edges();
  const std::size_t m = edges.size();

  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = start.label(i) == 0 ? 1.0 : -1.0;
  Threshold best{objective(graph, start, kind).objective,
                 std::vector<std::uint32_t>(start.labels().begin(), start.labels().end())};

  // Step size 1/L with L >= ||D||^2, D the weighted edge-difference operator.
  std::vector<double> sq(n, 0.0);
  for (const Edge& e : edges) {
    sq[e.i] += e.w * e.w;
    sq[e.j] += e.w * e.w;
  }
  const double lipschitz = 2.0 * (sq.empty() ? 0.0 : *std::max_element(sq.begin(), sq.end()));

  SolveOutcome out;
  out.history.push_back(best.value);
  std::vector<double> dual(m, 0.0), extrap(m, 0.0), previous(m), residual(n);
  // residual = lambda v - D^T p
  auto residual_of = [&](const std::vector<double>& v, double lambda, const std::vector<double>& p) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = lambda * v[i];
    for (std::size_t e = 0; e < m; ++e) {
      residual[edges[e].i] -= edges[e].w * p[e];
      residual[edges[e].j] += edges[e].w * p[e];
    }
  };

  std::size_t idle = 0;
  std::size_t steps = 0;
  bool settled = lipschitz == 0.0;
  while (steps < config.max_sweeps && lipschitz > 0.0) {
    ++steps;
    const std::vector<double> v = balance_subgradient(kind, u);
    double tv = 0.0, bal = 0.0;
    for (const Edge& e : edges) tv += e.w * std::abs(u[e.i] - u[e.j]);
    for (std::size_t i = 0; i < n; ++i) bal += v[i] * u[i];
    if (!(bal > 0.0)) {
      settled = true;
      break;
    }
    const double lambda = tv / bal;

    extrap = dual;
    double t = 1.0;
    for (std::size_t it = 0; it < kTvInnerIterations; ++it) {
      residual_of(v, lambda, extrap);
      previous = dual;
      for (std::size_t e = 0; e < m; ++e) {
        const double grad = edges[e].w * (residual[edges[e].i] - residual[edges[e].j]);
        dual[e] = std::clamp(extrap[e] + grad / lipschitz, -1.0, 1.0);
      }
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double momentum = (t - 1.0) / t_next;
      for (std::size_t e = 0; e < m; ++e) extrap[e] = dual[e] + momentum * (dual[e] - previous[e]);
      t = t_next;
    }
    residual_of(v, lambda, dual);
    double norm = 0.0;
    for (double r : residual) norm += r * r;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) {  // u already minimises the relaxed ratio
      settled = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) u[i] = residual[i] / norm;

    Threshold candidate = best_threshold(graph, kind, u);
    const double tol = 1e-12 * std::max(1.0, std::abs(best.value));
    if (!candidate.labels.empty() && candidate.value < best.value - tol) {
      best = std::move(candidate);
      idle = 0;
    } else {
      ++idle;
    }
    out.history.push_back(best.value);
    if (idle >= config.stall_sweeps_to_stop) {
      settled = true;
      break;
    }
  }

  SolverConfig refine = config;
  refine.initial = Partition(best.labels, 2);
  SolveOutcome polished = local_search(graph, kind, refine);
  out.partition = std::move(polished.partition);
  out.result = polished.result;
  out.sweeps_used = steps + polished.sweeps_used;
  out.converged = settled && polished.converged;
  out.history.insert(out.history.end(), polished.history.begin() + 1, polished.history.end());
  return out;
}

SolverMethod resolve_method(SolverMethod method, const ObjectiveKind& kind) {
  if (method == SolverMethod::Auto) return kind.two_way() ? SolverMethod::TvDescent : SolverMethod::LocalSearch;
  return method;
}

SolveOutcome solve(const GeometricGraph& graph, const ObjectiveKind& kind, const SolverConfig& config) {
  return resolve_method(config.method, kind) == SolverMethod::TvDescent ? tv_descent(graph, kind, config)
                                                                         : local_search(graph, kind, config);
}

}  // namespace bcl
