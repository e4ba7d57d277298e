#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "bcl/geometry.hpp"

namespace bcl {

struct Edge {
  std::uint32_t i;
  std::uint32_t j;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted proximity graph on a point cloud. Edges are stored once with
/// i < j (sorted by (i, j)) and mirrored into a CSR adjacency.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(std::size_t n, std::size_t dim, double epsilon, Kernel kernel, std::vector<Edge> edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  const Kernel& kernel() const { return kernel_; }

  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> neighbor_weights(std::size_t v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t neighbor_count(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(std::size_t v) const { return degree_[v]; }

  /// n^2 eps^(d+1), the normalisation shared by GTV and rescaled cuts.
  double cut_scale() const;

 private:
  std::size_t dim_ = 0;
  double epsilon_ = 0.0;
  Kernel kernel_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
  std::vector<double> weights_;
  std::vector<double> degree_;
};

/// w_ij = eta(|x_i - x_j| / eps) over a uniform cell index.
GeometricGraph build_graph(const PointCloud& cloud, double epsilon, const Kernel& kernel);

struct ComponentLabeling {
  std::vector<std::uint32_t> component_id;
  /// Size of each component, indexed by component id.
  std::vector<std::size_t> size_by_id;
  /// Component sizes sorted descending.
  std::vector<std::size_t> component_sizes;

  std::size_t count() const { return size_by_id.size(); }
  /// Id of the largest component; the smallest id wins ties.
  std::uint32_t largest() const;
};

ComponentLabeling connected_components(const GeometricGraph& graph);

double giant_component_fraction(const ComponentLabeling& labeling, std::size_t n);

struct DegreeStats {
  std::size_t max_degree = 0;
  std::size_t min_degree = 0;
  /// max/min; +infinity when some vertex is isolated.
  double ratio = std::numeric_limits<double>::infinity();
};

/// Unweighted (neighbour-count) degree extremes.
DegreeStats degree_regularity(const GeometricGraph& graph);

struct Subgraph {
  GeometricGraph graph;
  /// Original vertex index for each subgraph vertex.
  std::vector<std::uint32_t> original;
};

/// Induced subgraph on the given (ascending) vertex list.
Subgraph induced_subgraph(const GeometricGraph& graph, std::span<const std::uint32_t> vertices);

/// Writes "n epsilon kernel" followed by one "i j w" line per stored edge.
void write_edge_list(const GeometricGraph& graph, std::ostream& out);

}  // namespace bcl
