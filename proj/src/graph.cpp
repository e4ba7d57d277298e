#include "bcl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "bcl/error.hpp"

namespace bcl {

GeometricGraph::GeometricGraph(std::size_t n, std::size_t dim, double epsilon, Kernel kernel,
                               std::vector<Edge> edges)
    : dim_(dim), epsilon_(epsilon), kernel_(kernel), edges_(std::move(edges)) {
  std::vector<std::size_t> count(n, 0);
  for (const Edge& e : edges_) {
    if (e.i >= e.j || e.j >= n) throw InvalidArgument("edge list must have i < j < n");
    if (!(e.w > 0.0)) throw InvalidArgument("edge weights must be positive");
    ++count[e.i];
    ++count[e.j];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + count[v];
  neighbors_.resize(offsets_[n]);
  weights_.resize(offsets_[n]);
  degree_.assign(n, 0.0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (i, j), so every adjacency row comes out ascending.
  for (const Edge& e : edges_) {
    neighbors_[cursor[e.j]] = e.i;
    weights_[cursor[e.j]++] = e.w;
  }
  for (const Edge& e : edges_) {
    neighbors_[cursor[e.i]] = e.j;
    weights_[cursor[e.i]++] = e.w;
  }
  for (std::size_t v = 0; v < n; ++v) {
    double s = 0.0;
    for (std::size_t p = offsets_[v]; p < offsets_[v + 1]; ++p) s += weights_[p];
    degree_[v] = s;
  }
}

double GeometricGraph::cut_scale() const {
  const double n = static_cast<double>(size());
  return n * n * std::pow(epsilon_, static_cast<double>(dim_ + 1));
}

GeometricGraph build_graph(const PointCloud& cloud, double epsilon, const Kernel& kernel) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be positive");
  if (cloud.empty()) throw InvalidArgument("cannot build a graph on an empty cloud");
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  const double reach = epsilon * kernel.support();

  std::vector<double> lo(d), hi(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = hi[k] = cloud.coord(0, k);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], cloud.coord(i, k));
      hi[k] = std::max(hi[k], cloud.coord(i, k));
    }
  }

  // Cells are at least `reach` wide so only adjacent cells can hold neighbours;
  // the total cell count is capped near 2n.
  std::vector<std::size_t> cells(d);
  double total = 1.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double span = hi[k] - lo[k];
    cells[k] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(span / reach)));
    total *= static_cast<double>(cells[k]);
  }
  const double cap = std::max(1.0, 2.0 * static_cast<double>(n));
  if (total > cap) {
    const double shrink = std::pow(cap / total, 1.0 / static_cast<double>(d));
    for (auto& c : cells) c = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(c * shrink)));
  }
  std::vector<double> width(d);
  std::vector<std::size_t> stride(d);
  std::size_t cell_total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    width[k] = (hi[k] - lo[k]) / static_cast<double>(cells[k]);
    stride[k] = cell_total;
    cell_total *= cells[k];
  }

  auto cell_coord = [&](std::size_t i, std::size_t k) {
    if (!(width[k] > 0.0)) return std::size_t{0};
    auto c = static_cast<std::size_t>((cloud.coord(i, k) - lo[k]) / width[k]);
    return std::min(c, cells[k] - 1);
  };

  std::vector<std::size_t> cell_of(n);
  std::vector<std::size_t> start(cell_total + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < d; ++k) c += cell_coord(i, k) * stride[k];
    cell_of[i] = c;
    ++start[c + 1];
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> members(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) members[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }

  std::size_t offsets = 1;
  for (std::size_t k = 0; k < d; ++k) offsets *= 3;

  std::vector<Edge> edges;
  std::vector<Edge> row;
  std::vector<std::size_t> base(d);
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t k = 0; k < d; ++k) base[k] = cell_coord(i, k);
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t rest = o;
      std::size_t c = 0;
      bool inside = true;
      for (std::size_t k = 0; k < d; ++k) {
        const long step = static_cast<long>(rest % 3) - 1;
        rest /= 3;
        const long ck = static_cast<long>(base[k]) + step;
        if (ck < 0 || ck >= static_cast<long>(cells[k])) {
          inside = false;
          break;
        }
        c += static_cast<std::size_t>(ck) * stride[k];
      }
      if (!inside) continue;
      for (std::size_t p = start[c]; p < start[c + 1]; ++p) {
        const std::uint32_t j = members[p];
        if (j <= i) continue;
        const double w = kernel.profile(cloud.distance(i, j) / epsilon);
        if (w > 0.0) row.push_back({static_cast<std::uint32_t>(i), j, w});
      }
    }
    std::sort(row.begin(), row.end(), [](const Edge& a, const Edge& b) { return a.j < b.j; });
    edges.insert(edges.end(), row.begin(), row.end());
  }
  return GeometricGraph(n, d, epsilon, kernel, std::move(edges));
}

std::uint32_t ComponentLabeling::largest() const {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < size_by_id.size(); ++c) {
    if (size_by_id[c] > size_by_id[best]) best = c;
  }
  return best;
}

ComponentLabeling connected_components(const GeometricGraph& graph) {
  const std::size_t n = graph.size();
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  ComponentLabeling out;
  out.component_id.assign(n, unset);
  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (out.component_id[s] != unset) continue;
    const auto id = static_cast<std::uint32_t>(out.size_by_id.size());
    queue.clear();
    queue.push_back(static_cast<std::uint32_t>(s));
    out.component_id[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::uint32_t u : graph.neighbors(queue[head])) {
        if (out.component_id[u] == unset) {
          out.component_id[u] = id;
          queue.push_back(u);
        }
      }
    }
    out.size_by_id.push_back(queue.size());
  }
  out.component_sizes = out.size_by_id;
  std::sort(out.component_sizes.begin(), out.component_sizes.end(), std::greater<>());
  return out;
}

double giant_component_fraction(const ComponentLabeling& labeling, std::size_t n) {
  if (n == 0) throw InvalidArgument("giant component fraction needs n >= 1");
  if (labeling.component_sizes.empty()) return 0.0;
  return static_cast<double>(labeling.component_sizes.front()) / static_cast<double>(n);
}

DegreeStats degree_regularity(const GeometricGraph& graph) {
  if (graph.size() == 0) throw InvalidArgument("degree statistics need at least one vertex");
  DegreeStats s;
  s.max_degree = 0;
  s.min_degree = std::numeric_limits<std::size_t>::max();
  for (std::size_t v = 0; v < graph.size(); ++v) {
    s.max_degree = std::max(s.max_degree, graph.neighbor_count(v));
    s.min_degree = std::min(s.min_degree, graph.neighbor_count(v));
  }
  s.ratio = s.min_degree == 0 ? std::numeric_limits<double>::infinity()
                              : static_cast<double>(s.max_degree) / static_cast<double>(s.min_degree);
  return s;
}

Subgraph induced_subgraph(const GeometricGraph& graph, std::span<const std::uint32_t> vertices) {
  constexpr auto absent = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> local(graph.size(), absent);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (vertices[k] >= graph.size()) throw InvalidArgument("subgraph vertex out of range");
    if (k > 0 && vertices[k] <= vertices[k - 1]) throw InvalidArgument("subgraph vertices must be ascending");
    local[vertices[k]] = static_cast<std::uint32_t>(k);
  }
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (local[e.i] != absent && local[e.j] != absent) edges.push_back({local[e.i], local[e.j], e.w});
  }
  return Subgraph{GeometricGraph(vertices.size(), graph.dim(), graph.epsilon(), graph.kernel(), std::move(edges)),
                  std::vector<std::uint32_t>(vertices.begin(), vertices.end())};
}

void write_edge_list(const GeometricGraph& graph, std::ostream& out) {
  const auto old = out.precision(17);
  out << graph.size() << ' ' << graph.epsilon() << ' ' << graph.kernel().name() << '\n';
  for (const Edge& e : graph.edges()) out << e.i << ' ' << e.j << ' ' << e.w << '\n';
  out.precision(old);
}

}  // namespace bcl
