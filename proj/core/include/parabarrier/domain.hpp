#pragma once

#include <optional>
#include <vector>

#include "parabarrier/linalg.hpp"

namespace parabarrier {

/// Planar domain: axis-aligned box or annulus. Supplies the geometry queries
/// the barrier builders need (boundary walks, distances, exterior balls).
struct Domain {
  enum class Kind { Box, Annulus };
  Kind kind = Kind::Box;
  // Box
  Vec lo{0.0, 0.0}, hi{1.0, 1.0};
  // Annulus
  Vec center{0.0, 0.0};
  double inner = 0.0, outer = 1.0;

  static Domain box(Vec lo, Vec hi);
  static Domain annulus(Vec center, double inner, double outer);

  bool contains(const Vec& x) const;
  double dist_to_boundary(const Vec& x) const;  // positive inside, 0 on/outside
  double diameter() const;
  double perimeter() const;
  /// Walks the boundary; t in [0,1) covers all components.
  Vec boundary_point(double t) const;
  std::vector<Vec> boundary_points(int count) const;
  /// Outward unit normal at a boundary point (corner points get the diagonal).
  Vec outward_normal(const Vec& y) const;
  /// Largest exterior-ball radius available at boundary point y.
  double exterior_ball_limit(const Vec& y) const;
  /// Center z with B_rho(z) in the complement and y on its boundary.
  Vec exterior_ball_center(const Vec& y, double rho) const;
};

}  // namespace parabarrier
