#include "bcl/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "bcl/error.hpp"

namespace bcl {

Partition::Partition(std::vector<std::uint32_t> labels, std::size_t classes)
    : labels_(std::move(labels)), counts_(classes, 0) {
  if (classes < 2) throw InvalidArgument("a partition needs K >= 2 classes");
  for (std::uint32_t l : labels_) {
    if (l >= classes) throw InvalidArgument("label out of range");
    ++counts_[l];
  }
}

double Partition::fraction(std::size_t k) const {
  return static_cast<double>(counts_.at(k)) / static_cast<double>(labels_.size());
}

bool Partition::proper() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::size_t c) { return c > 0; });
}

ObjectiveKind ObjectiveKind::multiway(std::size_t classes) {
  if (classes < 2) throw InvalidArgument("multiway objective needs K >= 2");
  return ObjectiveKind(Kind::RatioMultiway, classes);
}

ObjectiveKind ObjectiveKind::parse(const std::string& text) {
  if (text == "cheeger") return cheeger();
  if (text == "ratio") return ratio();
  if (text.rfind("multiway:", 0) == 0) {
    const std::string tail = text.substr(9);
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(tail, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad class count in '" + text + "'");
    }
    if (used != tail.size() || k < 2) throw InvalidArgument("bad class count in '" + text + "'");
    return multiway(static_cast<std::size_t>(k));
  }
  throw InvalidArgument("unknown objective '" + text + "' (cheeger|ratio|multiway:K)");
}

std::string ObjectiveKind::label() const {
  switch (kind_) {
    case Kind::CheegerTwoWay:
      return "cheeger";
    case Kind::RatioTwoWay:
      return "ratio";
    case Kind::RatioMultiway:
      return "multiway:" + std::to_string(classes_);
  }
  return "?";
}

double ObjectiveKind::evaluate(std::span<const double> cut_by_class, std::span<const std::size_t> counts,
                               std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::CheegerTwoWay:
      return cut_by_class[0] / (static_cast<double>(std::min(counts[0], counts[1])) / nd);
    case Kind::RatioTwoWay:
      return cut_by_class[0] /
             (2.0 * (static_cast<double>(counts[0]) / nd) * (static_cast<double>(counts[1]) / nd));
    case Kind::RatioMultiway: {
      // Terms are summed in ascending order so relabelling the classes
      // cannot change the rounded value.
      const std::size_t k = counts.size();
      std::vector<double> heap_terms;
      double stack_terms[16];
      double* terms = stack_terms;
      if (k > 16) {
        heap_terms.resize(k);
        terms = heap_terms.data();
      }
      for (std::size_t c = 0; c < k; ++c) terms[c] = cut_by_class[c] / (static_cast<double>(counts[c]) / nd);
      std::sort(terms, terms + k);
      double s = 0.0;
      for (std::size_t c = 0; c < k; ++c) s += terms[c];
      return s;
    }
  }
  return 0.0;
}

namespace {

void require_same_size(const GeometricGraph& graph, const Partition& partition) {
  if (graph.size() != partition.size()) throw InvalidArgument("partition and graph sizes differ");
}

}  // namespace

double cut_value(const GeometricGraph& graph, const Partition& partition, std::size_t k) {
  require_same_size(graph, partition);
  if (k >= partition.classes()) throw InvalidArgument("label out of range");
  double s = 0.0;
  for (const Edge& e : graph.edges()) {
    const bool a = partition.label(e.i) == k;
    const bool b = partition.label(e.j) == k;
    if (a != b) s += e.w;
  }
  return s;
}

std::vector<double> cuts_by_class(const GeometricGraph& graph, const Partition& partition) {
  require_same_size(graph, partition);
  std::vector<double> cut(partition.classes(), 0.0);
  for (const Edge& e : graph.edges()) {
    const auto a = partition.label(e.i);
    const auto b = partition.label(e.j);
    if (a != b) {
      cut[a] += e.w;
      cut[b] += e.w;
    }
  }
  return cut;
}

double balance_two_way(const Partition& partition, const ObjectiveKind& kind) {
  if (partition.classes() != 2 || !kind.two_way()) throw InvalidArgument("two-way balance needs K = 2");
  const double y = partition.fraction(0);
  const double yc = partition.fraction(1);
  return kind.kind() == ObjectiveKind::Kind::RatioTwoWay ? 2.0 * y * yc : std::min(y, yc);
}

CutResult objective(const GeometricGraph& graph, const Partition& partition, const ObjectiveKind& kind) {
  require_same_size(graph, partition);
  if (partition.classes() != kind.classes()) throw InvalidArgument("partition class count does not match objective");
  if (!partition.proper()) throw ImproperPartition("objective needs every class nonempty");
  CutResult r;
  double raw = 0.0;
  for (const Edge& e : graph.edges()) {
    if (partition.label(e.i) != partition.label(e.j)) raw += e.w;
  }
  r.raw_cut = raw;
  if (kind.two_way()) {
    r.balance = balance_two_way(partition, kind);
    r.objective = raw / r.balance;
  } else {
    const auto cuts = cuts_by_class(graph, partition);
    r.objective = kind.evaluate(cuts, partition.counts(), partition.size());
    r.balance = r.objective > 0.0 ? raw / r.objective : 0.0;
  }
  r.rescaled_constant = r.objective / graph.cut_scale();
  return r;
}

double graph_total_variation(const GeometricGraph& graph, std::span<const double> u) {
  if (u.size() != graph.size()) throw InvalidArgument("function and graph sizes differ");
  double s = 0.0;
  for (const Edge& e : graph.edges()) s += e.w * std::abs(u[e.i] - u[e.j]);
  return 2.0 * s / graph.cut_scale();
}

double ratio_balance_of(std::span<const double> u) {
  if (u.empty()) return 0.0;
  double mean = 0.0;
  for (double v : u) mean += v;
  mean /= static_cast<double>(u.size());
  double s = 0.0;
  for (double v : u) s += std::abs(v - mean);
  return s / static_cast<double>(u.size());
}

double lower_median(std::span<const double> u) {
  if (u.empty()) throw InvalidArgument("median of an empty set");
  std::vector<double> v(u.begin(), u.end());
  const std::size_t mid = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

double cheeger_balance_of(std::span<const double> u) {
  if (u.empty()) return 0.0;
  const double c = lower_median(u);
  double s = 0.0;
  for (double v : u) s += std::abs(v - c);
  return s / static_cast<double>(u.size());
}

std::vector<double> indicator_of(const Partition& partition, std::size_t k) {
  std::vector<double> u(partition.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = partition.label(i) == k ? 1.0 : 0.0;
  return u;
}

std::vector<double> normalized_indicator(const Partition& partition, const ObjectiveKind& kind) {
  if (!kind.two_way()) throw InvalidArgument("normalized indicator is defined for two-way objectives");
  auto u = indicator_of(partition, 0);
  const double b =
      kind.kind() == ObjectiveKind::Kind::RatioTwoWay ? ratio_balance_of(u) : cheeger_balance_of(u);
  if (!(b > 0.0)) throw ImproperPartition("normalized indicator needs a nonzero balance");
  for (double& v : u) v /= b;
  return u;
}

}  // namespace bcl
