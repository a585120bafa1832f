#pragma once

#include <functional>
#include <string>

#include "parabarrier/linalg.hpp"

namespace parabarrier {

/// Boundary/initial data h(x, t): a named analytic family, optionally
/// modulated in time by (1 + tamp sin(2π t / tper)).
struct BoundaryData {
  std::string family;
  std::function<double(const Vec&, double)> h;

  double operator()(const Vec& x, double t) const { return h(x, t); }

  static BoundaryData constant(double c);
  static BoundaryData gaussian(double base, double amp, Vec center, double width);
  static BoundaryData ramp(double base, Vec slope);
  static BoundaryData cos_product(double base, double amp, double fx, double fy);
  BoundaryData with_time_modulation(double tamp, double tper) const;
};

}  // namespace parabarrier
