#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcl/functionals.hpp"
#include "bcl/geometry.hpp"

namespace bcl {

struct BottleneckResult {
  /// matching[i] = index of the reference point paired with sample i.
  std::vector<std::uint32_t> matching;
  double bottleneck_distance = 0.0;
  /// bottleneck * n^(1/d) / (log n)^p_d, p_2 = 3/4 and p_d = 1/d for d >= 3.
  double normalized = 0.0;
};

/// Exponent p_d of the log factor in the infinity-transport rate.
double transport_log_power(std::size_t dim);

/// Min-max perfect matching between two equal-size clouds.
BottleneckResult bottleneck_match(const PointCloud& cloud, const PointCloud& grid);

/// Fraction of vertices whose labels differ, without relabelling.
double raw_disagreement(const Partition& partition, const Partition& ground_truth);

/// Disagreement fraction minimised over all K! relabellings (K <= 8).
double misclassification_error(const Partition& partition, const Partition& ground_truth);

}  // namespace bcl
