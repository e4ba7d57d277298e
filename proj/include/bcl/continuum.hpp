#pragma once

#include "bcl/functionals.hpp"
#include "bcl/geometry.hpp"

namespace bcl {

enum class LineOrientation { Horizontal, Vertical };

/// Axis-aligned straight cut {y = position} or {x = position}.
struct LineCut {
  LineOrientation orientation = LineOrientation::Horizontal;
  double position = 0.0;
};

/// A straight cut of a constant-density rectangle together with its
/// continuum cut, balance and objective. A is the side above (or right of)
/// the line.
struct ContinuumCut {
  RectDomain domain{1.0, 1.0};
  LineCut line;
  double cut_value = 0.0;
  double mass_a = 0.0;
  double balance = 0.0;
  double objective = 0.0;
  /// Set when another orientation ties (square domains).
  bool degenerate = false;

  /// Strict membership in A; points on the line belong to A^c.
  bool in_a(double x, double y) const;
};

ContinuumCut continuum_objective(const RectDomain& domain, const LineCut& line, const ObjectiveKind& kind);

/// Best axis-aligned line cut; horizontal wins ties.
ContinuumCut optimal_axis_cut(const RectDomain& domain, const ObjectiveKind& kind);

/// sigma_eta * C, the limit of C_n / (n^2 eps_n^(d+1)) as stated for the
/// two-way objectives.
double rescaled_limit_target(const RectDomain& domain, const Kernel& kernel, const ObjectiveKind& kind,
                             std::size_t dim);

}  // namespace bcl
