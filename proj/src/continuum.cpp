#include "bcl/continuum.hpp"

#include <algorithm>

#include "bcl/error.hpp"

namespace bcl {

bool ContinuumCut::in_a(double x, double y) const {
  return line.orientation == LineOrientation::Horizontal ? y > line.position : x > line.position;
}

ContinuumCut continuum_objective(const RectDomain& domain, const LineCut& line, const ObjectiveKind& kind) {
  if (domain.dim() != 2) throw InvalidArgument("continuum line cuts need a planar domain");
  if (!kind.two_way()) throw InvalidArgument("continuum oracle covers two-way objectives only");
  const bool horizontal = line.orientation == LineOrientation::Horizontal;
  const double lo = domain.lower()[horizontal ? 1 : 0];
  const double span = horizontal ? domain.height() : domain.width();
  if (!(line.position > lo && line.position < lo + span)) {
    throw InvalidArgument("cut line must lie strictly inside the rectangle");
  }
  const double rho = domain.rho();
  const double length = horizontal ? domain.width() : domain.height();

  ContinuumCut c{domain, line};
  c.cut_value = length * rho * rho;
  c.mass_a = (lo + span - line.position) / span;
  const double mass_c = 1.0 - c.mass_a;
  c.balance = kind.kind() == ObjectiveKind::Kind::RatioTwoWay ? 2.0 * c.mass_a * mass_c
                                                              : std::min(c.mass_a, mass_c);
  c.objective = c.cut_value / c.balance;
  return c;
}

ContinuumCut optimal_axis_cut(const RectDomain& domain, const ObjectiveKind& kind) {
  if (domain.dim() != 2) throw InvalidArgument("continuum line cuts need a planar domain");
  // Both balances peak at half mass for a fixed orientation while the cut
  // length stays constant, so only the two mid-lines compete.
  const ContinuumCut h = continuum_objective(
      domain, {LineOrientation::Horizontal, domain.lower()[1] + 0.5 * domain.height()}, kind);
  const ContinuumCut v = continuum_objective(
      domain, {LineOrientation::Vertical, domain.lower()[0] + 0.5 * domain.width()}, kind);
  if (v.objective < h.objective) return v;
  ContinuumCut best = h;
  best.degenerate = v.objective == h.objective;
  return best;
}

double rescaled_limit_target(const RectDomain& domain, const Kernel& kernel, const ObjectiveKind& kind,
                             std::size_t dim) {
  return surface_tension(kernel, dim) * optimal_axis_cut(domain, kind).objective;
}

}  // namespace bcl
