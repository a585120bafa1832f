#pragma once

#include <functional>

#include "parabarrier/coercivity.hpp"
#include "parabarrier/linalg.hpp"
#include "parabarrier/operators.hpp"

namespace parabarrier {

/// Radial profile v(r). Power profiles a + b r^β carry exact derivatives;
/// arbitrary C² profiles can supply their own maps.
struct RadialProfile {
  double a = 0.0, b = 1.0, beta = 2.0;
  Vec center;
  std::function<double(double)> value, d1, d2;

  static RadialProfile power(double a, double b, double beta, Vec center);
  static RadialProfile general(std::function<double(double)> value,
                               std::function<double(double)> d1,
                               std::function<double(double)> d2, Vec center);
  bool is_power = true;
};

constexpr double kRadialRMin = 1e-10;

struct GradHess {
  Vec grad;
  SymMat hess;
};

/// Dv = v'(r) e and D²v + d·Dv⊗Dv = (v'/r) I + (v'' + d (v')² - v'/r) e⊗e,
/// with e = (x - z)/r. d = 0 unless the transformed equation's Dv⊗Dv
/// augmentation is wanted.
GradHess radial_gradient_hessian(const RadialProfile& profile, const Vec& x,
                                 double d_aug = 0.0);

/// H(Dv, D²v) for v = a + b r^β through the homogeneity reduction:
/// (bβ)^k r^{βk-γ} H(e, I-(2-β)e⊗e) for bβ > 0, and
/// |bβ|^k r^{βk-γ} H(e, (2-β)e⊗e-I) for bβ < 0. Direction-specific.
double reduce(const Operator& op, const RadialProfile& profile, double r, const Vec& e);

struct TwoSidedBounds {
  double lower = 0.0, upper = 0.0;
};

/// Two-sided envelope for H(Dv, D²v), v = a + b r^β, interpolating m, μ at
/// 2-β on the coercivity grid (conservatively between grid points).
TwoSidedBounds radial_bounds(const Operator& op, const CoercivityProfile& coer, double b,
                             double beta, double r);

}  // namespace parabarrier
