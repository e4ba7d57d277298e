#include <cmath>
#include <vector>

#include "doctest.h"

#include "bcl/error.hpp"
#include "bcl/functionals.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace bcl;

namespace {

GeometricGraph unit_graph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::vector<Edge> e;
  for (auto [i, j] : pairs) e.push_back({i, j, 1.0});
  return GeometricGraph(n, 2, 1.0, Kernel::indicator(), e);
}

// Two unit triangles {0,1,2}, {3,4,5} joined by the bridge 2-3.
GeometricGraph triangles_with_bridge() {
  return unit_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

// Three unit triangles, pairwise joined by one bridge each.
GeometricGraph three_triangles() {
  return unit_graph(9, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {6, 7}, {7, 8}, {6, 8}, {2, 3}, {5, 6}, {0, 8}});
}

std::vector<oracle::Pair> pairs_of(const GeometricGraph& g) {
  std::vector<oracle::Pair> out;
  for (const Edge& e : g.edges()) out.push_back({e.i, e.j, e.w});
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("partition counts and properness") {
  const Partition p({0, 1, 1, 2}, 3);
  CHECK(p.counts()[1] == 2);
  CHECK(p.fraction(1) == 0.5);
  CHECK(p.proper());
  CHECK_FALSE(Partition({0, 0, 2}, 3).proper());
  CHECK_THROWS_AS(Partition({0, 3}, 3), InvalidArgument);
  CHECK_THROWS_AS(Partition({0, 0}, 1), InvalidArgument);
}

TEST_CASE("cut values") {
  const auto g = triangles_with_bridge();
  const Partition tri({0, 0, 0, 1, 1, 1}, 2);
  CHECK(cut_value(g, tri, 0) == 1.0);
  CHECK(cut_value(g, Partition({0, 0, 0, 0, 0, 0}, 2), 0) == 0.0);
  const auto k4 = unit_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(cut_value(k4, Partition({0, 1, 1, 1}, 2), 0) == 3.0);
  CHECK_THROWS_AS(cut_value(g, tri, 2), InvalidArgument);
}

TEST_CASE("two-way balance terms") {
  const Partition p37({0, 0, 0, 1, 1, 1, 1, 1, 1, 1}, 2);
  CHECK(balance_two_way(p37, ObjectiveKind::ratio()) == doctest::Approx(0.42).epsilon(1e-15));
  CHECK(balance_two_way(p37, ObjectiveKind::cheeger()) == doctest::Approx(0.3).epsilon(1e-15));
  const Partition p55({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 2);
  CHECK(balance_two_way(p55, ObjectiveKind::ratio()) == 0.5);
  CHECK(balance_two_way(p55, ObjectiveKind::cheeger()) == 0.5);
  CHECK_THROWS_AS(balance_two_way(Partition({0, 1, 2}, 3), ObjectiveKind::ratio()), InvalidArgument);
}

TEST_CASE("objectives on hand-built graphs") {
  const auto g = triangles_with_bridge();
  const Partition tri({0, 0, 0, 1, 1, 1}, 2);
  const CutResult c = objective(g, tri, ObjectiveKind::cheeger());
  CHECK(c.raw_cut == 1.0);
  CHECK(c.balance == 0.5);
  CHECK(c.objective == 2.0);
  CHECK(c.rescaled_constant == doctest::Approx(2.0 / 36.0));
  const CutResult r = objective(g, tri, ObjectiveKind::ratio());
  CHECK(r.balance == 0.5);
  CHECK(r.objective == 2.0);
  const CutResult m = objective(three_triangles(), Partition({0, 0, 0, 1, 1, 1, 2, 2, 2}, 3), ObjectiveKind::multiway(3));
  CHECK(m.objective == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(m.raw_cut == 3.0);
  CHECK_THROWS_AS(objective(g, Partition({0, 0, 0, 0, 0, 0}, 2), ObjectiveKind::cheeger()), ImproperPartition);
}

TEST_CASE("objective kinds") {
  CHECK(ObjectiveKind::parse("cheeger") == ObjectiveKind::cheeger());
  CHECK(ObjectiveKind::parse("multiway:4").classes() == 4);
  CHECK(ObjectiveKind::parse("multiway:4").label() == "multiway:4");
  CHECK_THROWS_AS(ObjectiveKind::parse("multiway:1"), InvalidArgument);
  CHECK_THROWS_AS(ObjectiveKind::parse("normalized"), InvalidArgument);
}

TEST_CASE("graph total variation") {
  const auto g = triangles_with_bridge();
  const std::vector<double> constant(6, 3.5);
  CHECK(graph_total_variation(g, constant) == 0.0);
  const std::vector<double> step{1, 1, 1, 0, 0, 0};
  CHECK(graph_total_variation(g, step) == doctest::Approx(2.0 / 36.0));
}

TEST_CASE("property: GTV of an indicator is a rescaled cut") {
  gen::Rng rng(31);
  for (int rep = 0; rep < 300; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 2, 200), rep % 3 == 0);
    const auto& g = inst.graph;
    const std::size_t k = gen::size_in(rng, 2, 4);
    const Partition p(gen::labels(rng, g.size(), k), k);
    for (std::size_t c = 0; c < k; ++c) {
      const double lhs = graph_total_variation(g, indicator_of(p, c));
      const double rhs = 2.0 * cut_value(g, p, c) / g.cut_scale();
      if (rhs == 0.0) {
        CHECK(lhs == 0.0);
      } else {
        CHECK(rel(lhs, rhs) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: GTV is absolutely homogeneous") {
  gen::Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 2, 150));
    std::vector<double> u(inst.graph.size()), v(inst.graph.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = gen::real_in(rng, -2, 2);
      v[i] = -3.0 * u[i];
    }
    CHECK(graph_total_variation(inst.graph, v) == doctest::Approx(3.0 * graph_total_variation(inst.graph, u)).epsilon(1e-12));
  }
}

TEST_CASE("property: library objective matches the textbook formula") {
  gen::Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 3, 120));
    const std::size_t k = rep % 3 == 2 ? gen::size_in(rng, 3, 5) : 2;
    const Partition p = gen::proper_partition(rng, inst.graph.size(), k);
    const auto kind = k > 2 ? ObjectiveKind::multiway(k) : (rep % 3 == 0 ? ObjectiveKind::cheeger() : ObjectiveKind::ratio());
    const auto obj = k > 2 ? oracle::Obj::Multiway : (rep % 3 == 0 ? oracle::Obj::Cheeger : oracle::Obj::Ratio);
    const std::vector<std::uint32_t> labels(p.labels().begin(), p.labels().end());
    const double expected = oracle::objective_of(pairs_of(inst.graph), labels, k, obj);
    const double got = objective(inst.graph, p, kind).objective;
    if (expected == 0.0) {
      CHECK(got == 0.0);
    } else {
      CHECK(rel(got, expected) <= 1e-12);
    }
  }
}

TEST_CASE("property: two-way objectives are symmetric under label swap") {
  gen::Rng rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 2, 150));
    const Partition p = gen::proper_partition(rng, inst.graph.size(), 2);
    std::vector<std::uint32_t> flipped(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) flipped[i] = 1 - p.label(i);
    const Partition q(flipped, 2);
    for (const auto& kind : {ObjectiveKind::cheeger(), ObjectiveKind::ratio()}) {
      CHECK(objective(inst.graph, p, kind).objective == objective(inst.graph, q, kind).objective);
    }
  }
}

TEST_CASE("property: class cuts add up to twice the boundary weight") {
  gen::Rng rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 2, 150));
    const std::size_t k = gen::size_in(rng, 2, 5);
    const Partition p(gen::labels(rng, inst.graph.size(), k), k);
    double boundary = 0.0;
    for (const Edge& e : inst.graph.edges()) boundary += p.label(e.i) != p.label(e.j) ? e.w : 0.0;
    double sum = 0.0;
    for (double c : cuts_by_class(inst.graph, p)) sum += c;
    CHECK(sum == doctest::Approx(2.0 * boundary).epsilon(1e-12));
  }
}

TEST_CASE("property: deleting an edge never increases the cut") {
  gen::Rng rng(23);
  for (int rep = 0; rep < 60; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 3, 100));
    if (inst.graph.edge_count() == 0) continue;
    const Partition p = gen::proper_partition(rng, inst.graph.size(), 2);
    std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(gen::size_in(rng, 0, edges.size() - 1)));
    const GeometricGraph smaller(inst.graph.size(), 2, inst.graph.epsilon(), inst.graph.kernel(), edges);
    CHECK(cut_value(smaller, p, 0) <= cut_value(inst.graph, p, 0));
  }
}

TEST_CASE("normalized indicators") {
  const Partition p55({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 2);
  for (double v : normalized_indicator(p55, ObjectiveKind::cheeger())) CHECK((v == 0.0 || v == doctest::Approx(2.0)));
  const Partition p37({0, 0, 0, 1, 1, 1, 1, 1, 1, 1}, 2);
  const auto u = normalized_indicator(p37, ObjectiveKind::cheeger());
  CHECK(cheeger_balance_of(indicator_of(p37, 0)) == doctest::Approx(0.3));
  for (double v : u) CHECK((v == 0.0 || v == doctest::Approx(10.0 / 3.0)));
  CHECK_THROWS_AS(normalized_indicator(Partition({0, 0, 0}, 2), ObjectiveKind::cheeger()), ImproperPartition);
}

TEST_CASE("property: discrete balance forms agree with the fraction formulas") {
  gen::Rng rng(29);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = gen::size_in(rng, 2, 80);
    const Partition p = gen::proper_partition(rng, n, 2);
    const auto ind = indicator_of(p, 0);
    CHECK(cheeger_balance_of(ind) == doctest::Approx(balance_two_way(p, ObjectiveKind::cheeger())).epsilon(1e-13));
    // (1/n) sum |1_Y - |Y|| = 2|Y||Y^c|.
    CHECK(ratio_balance_of(ind) == doctest::Approx(balance_two_way(p, ObjectiveKind::ratio())).epsilon(1e-13));
  }
}

TEST_CASE("property: GTV of the normalised indicator is twice the rescaled objective") {
  gen::Rng rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = gen::geometric(rng, gen::size_in(rng, 2, 150));
    const Partition p = gen::proper_partition(rng, inst.graph.size(), 2);
    for (const auto& kind : {ObjectiveKind::cheeger(), ObjectiveKind::ratio()}) {
      const double tv = graph_total_variation(inst.graph, normalized_indicator(p, kind));
      const double expect = 2.0 * objective(inst.graph, p, kind).objective / inst.graph.cut_scale();
      CHECK(tv == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("lower median") {
  const std::vector<double> even{4, 1, 3, 2};
  CHECK(lower_median(even) == 2.0);
  const std::vector<double> odd{5, 1, 3};
  CHECK(lower_median(odd) == 3.0);
}
