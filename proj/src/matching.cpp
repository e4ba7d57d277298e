#include "bcl/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bcl/error.hpp"

namespace bcl {

namespace {

constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

double cross_distance(const PointCloud& a, std::size_t i, const PointCloud& b, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double d = a.coord(i, k) - b.coord(j, k);
    s += d * d;
  }
  return std::sqrt(s);
}

struct Candidate {
  std::uint32_t target;
  double distance;
};

// For every sample point, the reference points within `radius`, nearest first.
std::vector<std::vector<Candidate>> pairs_within(const PointCloud& cloud, const PointCloud& grid, double radius) {
  const std::size_t d = cloud.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const PointCloud* pc : {&cloud, &grid}) {
    for (std::size_t i = 0; i < pc->size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], pc->coord(i, k));
        hi[k] = std::max(hi[k], pc->coord(i, k));
      }
    }
  }
  std::vector<std::size_t> cells(d), stride(d);
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    const double span = hi[k] - lo[k];
    cells[k] = std::clamp<std::size_t>(static_cast<std::size_t>(span / radius), 1,
                                       std::max<std::size_t>(1, 2 * grid.size()));
    stride[k] = total;
    total *= cells[k];
  }
  // Very small radii would give more cells than points; clamp the total.
  while (total > 4 * grid.size() + 4) {
    total = 1;
    for (std::size_t k = 0; k < d; ++k) {
      cells[k] = std::max<std::size_t>(1, cells[k] / 2);
      stride[k] = total;
      total *= cells[k];
    }
  }
  auto coord_of = [&](const PointCloud& pc, std::size_t i, std::size_t k) {
    const double span = hi[k] - lo[k];
    if (!(span > 0.0)) return std::size_t{0};
    auto c = static_cast<std::size_t>((pc.coord(i, k) - lo[k]) / span * static_cast<double>(cells[k]));
    return std::min(c, cells[k] - 1);
  };
  std::vector<std::size_t> start(total + 1, 0), cell_of(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < d; ++k) c += coord_of(grid, j, k) * stride[k];
    cell_of[j] = c;
    ++start[c + 1];
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> members(grid.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t j = 0; j < grid.size(); ++j) members[fill[cell_of[j]]++] = static_cast<std::uint32_t>(j);
  }
  std::size_t offsets = 1;
  for (std::size_t k = 0; k < d; ++k) offsets *= 3;

  std::vector<std::vector<Candidate>> out(cloud.size());
  std::vector<std::size_t> base(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) base[k] = coord_of(cloud, i, k);
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t rest = o, c = 0;
      bool inside = true;
      for (std::size_t k = 0; k < d; ++k) {
        const long ck = static_cast<long>(base[k]) + static_cast<long>(rest % 3) - 1;
        rest /= 3;
        if (ck < 0 || ck >= static_cast<long>(cells[k])) {
          inside = false;
          break;
        }
        c += static_cast<std::size_t>(ck) * stride[k];
      }
      if (!inside) continue;
      for (std::size_t p = start[c]; p < start[c + 1]; ++p) {
        const double dist = cross_distance(cloud, i, grid, members[p]);
        if (dist <= radius) out[i].push_back({members[p], dist});
      }
    }
    std::sort(out[i].begin(), out[i].end(), [](const Candidate& a, const Candidate& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.target < b.target);
    });
  }
  return out;
}

// Hopcroft-Karp restricted to candidate pairs with distance <= threshold.
class ThresholdMatcher {
 public:
  explicit ThresholdMatcher(const std::vector<std::vector<Candidate>>& adj, std::size_t right)
      : adj_(adj), left_(adj.size()), right_(right) {}

  bool perfect(double threshold, std::vector<std::uint32_t>* matching) {
    threshold_ = threshold;
    match_left_.assign(left_, kFree);
    match_right_.assign(right_, kFree);
    std::size_t size = 0;
    while (layer()) {
      for (std::size_t u = 0; u < left_; ++u) {
        if (match_left_[u] == kFree && augment(u)) ++size;
      }
    }
    if (size != left_) return false;
    if (matching) *matching = match_left_;
    return true;
  }

 private:
  bool layer() {
    dist_.assign(left_, kFree);
    std::vector<std::uint32_t> queue;
    for (std::size_t u = 0; u < left_; ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue.push_back(static_cast<std::uint32_t>(u));
      }
    }
    bool reached = false;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const auto u = queue[h];
      for (const Candidate& c : adj_[u]) {
        if (c.distance > threshold_) break;
        const auto w = match_right_[c.target];
        if (w == kFree) {
          reached = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return reached;
  }

  bool augment(std::size_t u) {
    for (const Candidate& c : adj_[u]) {
      if (c.distance > threshold_) break;
      const auto w = match_right_[c.target];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && augment(w))) {
        match_left_[u] = c.target;
        match_right_[c.target] = static_cast<std::uint32_t>(u);
        return true;
      }
    }
    dist_[u] = kFree;
    return false;
  }

  const std::vector<std::vector<Candidate>>& adj_;
  std::size_t left_;
  std::size_t right_;
  double threshold_ = 0.0;
  std::vector<std::uint32_t> match_left_, match_right_, dist_;
};

}  // namespace

double transport_log_power(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("dimension must be positive");
  return dim == 2 ? 0.75 : 1.0 / static_cast<double>(dim);
}

BottleneckResult bottleneck_match(const PointCloud& cloud, const PointCloud& grid) {
  if (cloud.size() != grid.size()) throw InvalidArgument("bottleneck matching needs equal-size clouds");
  if (cloud.dim() != grid.dim()) throw InvalidArgument("bottleneck matching needs equal dimensions");
  BottleneckResult out;
  const std::size_t n = cloud.size();
  if (n == 0) return out;

  double volume = 1.0;
  for (std::size_t k = 0; k < cloud.dim(); ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const PointCloud* pc : {&cloud, &grid}) {
      for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, pc->coord(i, k));
        hi = std::max(hi, pc->coord(i, k));
      }
    }
    volume *= std::max(hi - lo, 1e-12);
  }
  double radius = std::pow(volume / static_cast<double>(n), 1.0 / static_cast<double>(cloud.dim()));
  if (!(radius > 0.0)) radius = 1e-12;

  // Grow the radius until the threshold graph admits a perfect matching;
  // the optimum is then one of the candidate distances within it.
  std::vector<std::vector<Candidate>> adj;
  for (;;) {
    adj = pairs_within(cloud, grid, radius);
    ThresholdMatcher probe(adj, n);
    if (probe.perfect(radius, nullptr)) break;
    radius *= 2.0;
  }
  std::vector<double> values;
  for (const auto& row : adj) {
    for (const Candidate& c : row) values.push_back(c.distance);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  ThresholdMatcher matcher(adj, n);
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.perfect(values[mid], nullptr)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  matcher.perfect(values[lo], &out.matching);
  for (std::size_t i = 0; i < n; ++i) {
    out.bottleneck_distance = std::max(out.bottleneck_distance, cross_distance(cloud, i, grid, out.matching[i]));
  }
  const double nd = static_cast<double>(n);
  const double logn = std::log(nd);
  out.normalized = n > 1 ? out.bottleneck_distance * std::pow(nd, 1.0 / static_cast<double>(cloud.dim())) /
                               std::pow(logn, transport_log_power(cloud.dim()))
                         : 0.0;
  return out;
}

double raw_disagreement(const Partition& partition, const Partition& ground_truth) {
  if (partition.size() != ground_truth.size()) throw InvalidArgument("partitions have different sizes");
  if (partition.classes() != ground_truth.classes()) throw InvalidArgument("partitions have different K");
  if (partition.size() == 0) return 0.0;
  std::size_t diff = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) diff += partition.label(i) != ground_truth.label(i);
  return static_cast<double>(diff) / static_cast<double>(partition.size());
}

double misclassification_error(const Partition& partition, const Partition& ground_truth) {
  if (partition.size() != ground_truth.size()) throw InvalidArgument("partitions have different sizes");
  const std::size_t k = partition.classes();
  if (k != ground_truth.classes()) throw InvalidArgument("partitions have different K");
  if (k > 8) throw InvalidArgument("permutation search is limited to K <= 8");
  if (partition.size() == 0) return 0.0;
  // agree[a * k + b]: vertices with label a in `partition` and b in the truth.
  std::vector<std::size_t> agree(k * k, 0);
  for (std::size_t i = 0; i < partition.size(); ++i) ++agree[partition.label(i) * k + ground_truth.label(i)];
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t same = 0;
    for (std::size_t a = 0; a < k; ++a) same += agree[a * k + perm[a]];
    best = std::max(best, same);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(partition.size() - best) / static_cast<double>(partition.size());
}

}  // namespace bcl
