#include "parabarrier/radial.hpp"

#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

RadialProfile RadialProfile::power(double a, double b, double beta, Vec center) {
  if (b == 0.0) throw InputError("RadialProfile::power: b must be nonzero");
  if (beta == 0.0) throw InputError("RadialProfile::power: beta must be nonzero");
  RadialProfile p;
  p.a = a;
  p.b = b;
  p.beta = beta;
  p.center = std::move(center);
  p.is_power = true;
  p.value = [a, b, beta](double r) { return a + b * std::pow(r, beta); };
  p.d1 = [b, beta](double r) { return b * beta * std::pow(r, beta - 1.0); };
  p.d2 = [b, beta](double r) { return b * beta * (beta - 1.0) * std::pow(r, beta - 2.0); };
  return p;
}

RadialProfile RadialProfile::general(std::function<double(double)> value,
                                     std::function<double(double)> d1,
                                     std::function<double(double)> d2, Vec center) {
  RadialProfile p;
  p.center = std::move(center);
  p.value = std::move(value);
  p.d1 = std::move(d1);
  p.d2 = std::move(d2);
  p.is_power = false;
  return p;
}

GradHess radial_gradient_hessian(const RadialProfile& profile, const Vec& x,
                                 double d_aug) {
  const int n = static_cast<int>(x.size());
  if (profile.center.size() != x.size())
    throw InputError("radial_gradient_hessian: dimension mismatch");
  Vec diff = x - profile.center;
  double r = norm(diff);
  if (r < kRadialRMin)
    throw InputError("radial_gradient_hessian: evaluation at the profile center");
  Vec e = (1.0 / r) * diff;
  double v1 = profile.d1(r);
  double v2 = profile.d2(r);

  GradHess gh;
  gh.grad = v1 * e;
  gh.hess = SymMat(n);
  double diag = v1 / r;
  double rank1 = v2 + d_aug * v1 * v1 - v1 / r;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      gh.hess.set(i, j, (i == j ? diag : 0.0) + rank1 * e[i] * e[j]);
  return gh;
}

double reduce(const Operator& op, const RadialProfile& profile, double r, const Vec& e) {
  if (r <= 0.0) throw InputError("reduce: r must be positive");
  if (!profile.is_power) throw InputError("reduce: requires a power profile");
  double bb = profile.b * profile.beta;
  if (bb == 0.0) throw InputError("reduce: degenerate profile, b*beta = 0");
  double k = op.k(), gamma = op.gamma();
  double scale = std::pow(std::abs(bb), k) * std::pow(r, profile.beta * k - gamma);
  double lam = 2.0 - profile.beta;
  if (bb > 0.0) return scale * op.eval(e, SymMat::pencil(e, lam));
  return scale * op.eval(e, SymMat::pencil_neg(e, lam));
}

TwoSidedBounds radial_bounds(const Operator& op, const CoercivityProfile& coer, double b,
                             double beta, double r) {
  if (r <= 0.0) throw InputError("radial_bounds: r must be positive");
  double bb = b * beta;
  if (bb == 0.0) throw InputError("radial_bounds: degenerate profile, b*beta = 0");
  double lam = 2.0 - beta;
  if (!coer.covers(lam))
    throw InputError("radial_bounds: 2-beta outside coercivity grid coverage");
  double m = coer.m_at(lam);
  double mu = coer.mu_at(lam);
  double k = op.k(), gamma = op.gamma();
  double scale = std::pow(std::abs(bb), k) / std::pow(r, gamma - beta * k);
  TwoSidedBounds out;
  if (bb > 0.0) {
    out.lower = scale * m;
    out.upper = scale * mu;
  } else {
    out.lower = -scale * mu;
    out.upper = -scale * m;
  }
  return out;
}

}  // namespace parabarrier
