#include <cmath>

#include "doctest.h"

#include "bcl/continuum.hpp"
#include "bcl/error.hpp"
#include "support/generators.hpp"

using namespace bcl;

TEST_CASE("continuum objective of mid-line cuts") {
  const auto cheeger = ObjectiveKind::cheeger();
  const ContinuumCut d1 = continuum_objective(RectDomain(1, 4), {LineOrientation::Horizontal, 2.0}, cheeger);
  CHECK(d1.cut_value == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(d1.balance == 0.5);
  CHECK(d1.objective == doctest::Approx(0.125).epsilon(1e-15));

  const ContinuumCut d2 = continuum_objective(RectDomain(1, 1.5), {LineOrientation::Horizontal, 0.75}, cheeger);
  CHECK(d2.cut_value == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(d2.objective == doctest::Approx(8.0 / 9.0).epsilon(1e-15));

  const ContinuumCut v = continuum_objective(RectDomain(1, 1.5), {LineOrientation::Vertical, 0.5}, cheeger);
  CHECK(v.cut_value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(v.objective == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(v.objective > d2.objective);

  const ContinuumCut r = continuum_objective(RectDomain(1, 1.5), {LineOrientation::Horizontal, 0.75}, ObjectiveKind::ratio());
  CHECK(r.balance == 0.5);

  CHECK_THROWS_AS(continuum_objective(RectDomain(1, 4), {LineOrientation::Horizontal, 4.0}, cheeger), InvalidArgument);
  CHECK_THROWS_AS(continuum_objective(RectDomain(1, 4), {LineOrientation::Vertical, -0.1}, cheeger), InvalidArgument);
  CHECK_THROWS_AS(continuum_objective(RectDomain(1, 4), {LineOrientation::Horizontal, 2.0}, ObjectiveKind::multiway(3)),
                  InvalidArgument);
}

TEST_CASE("optimal axis cuts") {
  const ContinuumCut d1 = optimal_axis_cut(RectDomain(1, 4), ObjectiveKind::cheeger());
  CHECK(d1.line.orientation == LineOrientation::Horizontal);
  CHECK(d1.line.position == 2.0);
  CHECK(d1.objective == doctest::Approx(0.125));
  CHECK_FALSE(d1.degenerate);
  const ContinuumCut d2 = optimal_axis_cut(RectDomain(1, 1.5), ObjectiveKind::cheeger());
  CHECK(d2.line.position == 0.75);
  CHECK(d2.objective == doctest::Approx(8.0 / 9.0));
  const ContinuumCut sq = optimal_axis_cut(RectDomain(1, 1), ObjectiveKind::cheeger());
  CHECK(sq.objective == doctest::Approx(2.0));
  CHECK(sq.line.orientation == LineOrientation::Horizontal);
  CHECK(sq.degenerate);
  const ContinuumCut wide = optimal_axis_cut(RectDomain(3, 1), ObjectiveKind::cheeger());
  CHECK(wide.line.orientation == LineOrientation::Vertical);
  CHECK(wide.line.position == 1.5);
}

TEST_CASE("membership is strict") {
  const ContinuumCut d2 = optimal_axis_cut(RectDomain(1, 1.5), ObjectiveKind::cheeger());
  CHECK(d2.in_a(0.5, 0.76));
  CHECK_FALSE(d2.in_a(0.5, 0.75));
  CHECK_FALSE(d2.in_a(0.5, 0.1));
}

TEST_CASE("rescaled limit targets") {
  CHECK(rescaled_limit_target(RectDomain(1, 4), Kernel::indicator(), ObjectiveKind::cheeger(), 2) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(rescaled_limit_target(RectDomain(1, 1.5), Kernel::indicator(), ObjectiveKind::cheeger(), 2) ==
        doctest::Approx(32.0 / 27.0).epsilon(1e-12));
  const double ratio = surface_tension(Kernel::gaussian(), 2) / surface_tension(Kernel::indicator(), 2);
  CHECK(rescaled_limit_target(RectDomain(1, 4), Kernel::gaussian(), ObjectiveKind::cheeger(), 2) ==
        doctest::Approx(ratio / 6.0).epsilon(1e-12));
}

TEST_CASE("property: Cheeger line cuts are symmetric about and minimised at the mid-line") {
  gen::Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const RectDomain d = gen::domain(rng);
    const double h = d.height();
    const double mid = continuum_objective(d, {LineOrientation::Horizontal, h / 2}, ObjectiveKind::cheeger()).objective;
    const double t = gen::real_in(rng, 0.01, 0.49) * h;
    const double lo = continuum_objective(d, {LineOrientation::Horizontal, h / 2 - t}, ObjectiveKind::cheeger()).objective;
    const double hi = continuum_objective(d, {LineOrientation::Horizontal, h / 2 + t}, ObjectiveKind::cheeger()).objective;
    CHECK(lo == doctest::Approx(hi).epsilon(1e-12));
    CHECK(lo >= mid);
  }
}

TEST_CASE("property: scaling the rectangle by s scales the objective by s^-3") {
  gen::Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const RectDomain d = gen::domain(rng);
    const double s = gen::real_in(rng, 0.3, 3.0);
    const RectDomain big(d.width() * s, d.height() * s);
    const double y = gen::real_in(rng, 0.1, 0.9);
    const double a = continuum_objective(d, {LineOrientation::Horizontal, y * d.height()}, ObjectiveKind::ratio()).objective;
    const double b = continuum_objective(big, {LineOrientation::Horizontal, y * big.height()}, ObjectiveKind::ratio()).objective;
    CHECK(b == doctest::Approx(a / (s * s * s)).epsilon(1e-12));
  }
}
