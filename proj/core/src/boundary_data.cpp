#include "parabarrier/boundary_data.hpp"

#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

BoundaryData BoundaryData::constant(double c) {
  BoundaryData b;
  b.family = "constant";
  b.h = [c](const Vec&, double) { return c; };
  return b;
}

BoundaryData BoundaryData::gaussian(double base, double amp, Vec center, double width) {
  if (width <= 0.0) throw InputError("BoundaryData::gaussian: width must be positive");
  BoundaryData b;
  b.family = "gaussian";
  b.h = [base, amp, center, width](const Vec& x, double) {
    double r2 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      double d = x[i] - center[i];
      r2 += d * d;
    }
    return base + amp * std::exp(-r2 / (width * width));
  };
  return b;
}

BoundaryData BoundaryData::ramp(double base, Vec slope) {
  BoundaryData b;
  b.family = "ramp";
  b.h = [base, slope](const Vec& x, double) {
    double s = base;
    for (size_t i = 0; i < x.size(); ++i) s += slope[i] * x[i];
    return s;
  };
  return b;
}

BoundaryData BoundaryData::cos_product(double base, double amp, double fx, double fy) {
  BoundaryData b;
  b.family = "cos_product";
  b.h = [base, amp, fx, fy](const Vec& x, double) {
    return base + amp * std::cos(M_PI * fx * x[0]) * std::cos(M_PI * fy * x[1]);
  };
  return b;
}

BoundaryData BoundaryData::with_time_modulation(double tamp, double tper) const {
  if (tper <= 0.0) throw InputError("with_time_modulation: period must be positive");
  BoundaryData b;
  b.family = family + "+tmod";
  auto inner = h;
  b.h = [inner, tamp, tper](const Vec& x, double t) {
    return inner(x, t) * (1.0 + tamp * std::sin(2.0 * M_PI * t / tper));
  };
  return b;
}

}  // namespace parabarrier
