#include "parabarrier/domain.hpp"

#include <algorithm>
#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

Domain Domain::box(Vec lo, Vec hi) {
  if (lo.size() != 2 || hi.size() != 2) throw InputError("Domain::box: expects 2D");
  if (!(lo[0] < hi[0] && lo[1] < hi[1])) throw InputError("Domain::box: empty box");
  Domain d;
  d.kind = Kind::Box;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

Domain Domain::annulus(Vec center, double inner, double outer) {
  if (center.size() != 2) throw InputError("Domain::annulus: expects 2D");
  if (!(0.0 < inner && inner < outer))
    throw InputError("Domain::annulus: require 0 < inner < outer");
  Domain d;
  d.kind = Kind::Annulus;
  d.center = std::move(center);
  d.inner = inner;
  d.outer = outer;
  return d;
}

bool Domain::contains(const Vec& x) const {
  if (kind == Kind::Box)
    return x[0] > lo[0] && x[0] < hi[0] && x[1] > lo[1] && x[1] < hi[1];
  double r = norm(x - center);
  return r > inner && r < outer;
}

double Domain::dist_to_boundary(const Vec& x) const {
  if (kind == Kind::Box) {
    if (!contains(x)) return 0.0;
    return std::min(std::min(x[0] - lo[0], hi[0] - x[0]),
                    std::min(x[1] - lo[1], hi[1] - x[1]));
  }
  double r = norm(x - center);
  if (r <= inner || r >= outer) return 0.0;
  return std::min(r - inner, outer - r);
}

double Domain::diameter() const {
  if (kind == Kind::Box) return norm(hi - lo);
  return 2.0 * outer;
}

double Domain::perimeter() const {
  if (kind == Kind::Box) return 2.0 * ((hi[0] - lo[0]) + (hi[1] - lo[1]));
  return 2.0 * M_PI * (inner + outer);
}

Vec Domain::boundary_point(double t) const {
  t -= std::floor(t);
  if (kind == Kind::Box) {
    double w = hi[0] - lo[0], h = hi[1] - lo[1];
    double per = 2.0 * (w + h);
    double s = t * per;
    if (s < w) return {lo[0] + s, lo[1]};
    s -= w;
    if (s < h) return {hi[0], lo[1] + s};
    s -= h;
    if (s < w) return {hi[0] - s, hi[1]};
    s -= w;
    return {lo[0], hi[1] - s};
  }
  double co = 2.0 * M_PI * outer, ci = 2.0 * M_PI * inner;
  double s = t * (co + ci);
  if (s < co) {
    double th = s / outer;
    return {center[0] + outer * std::cos(th), center[1] + outer * std::sin(th)};
  }
  double th = (s - co) / inner;
  return {center[0] + inner * std::cos(th), center[1] + inner * std::sin(th)};
}

std::vector<Vec> Domain::boundary_points(int count) const {
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(boundary_point((i + 0.5) / static_cast<double>(count)));
  return out;
}

Vec Domain::outward_normal(const Vec& y) const {
  if (kind == Kind::Annulus) {
    Vec d = y - center;
    double r = norm(d);
    if (r <= 0.0) throw InputError("outward_normal: point at annulus center");
    // inner circle points outward = toward the center hole
    double sgn = std::abs(r - inner) < std::abs(r - outer) ? -1.0 : 1.0;
    return (sgn / r) * d;
  }
  const double tol = 1e-9 * diameter();
  Vec nrm{0.0, 0.0};
  if (std::abs(y[0] - lo[0]) < tol) nrm[0] -= 1.0;
  if (std::abs(y[0] - hi[0]) < tol) nrm[0] += 1.0;
  if (std::abs(y[1] - lo[1]) < tol) nrm[1] -= 1.0;
  if (std::abs(y[1] - hi[1]) < tol) nrm[1] += 1.0;
  if (nrm[0] == 0.0 && nrm[1] == 0.0)
    throw InputError("outward_normal: point is not on the box boundary");
  return normalized(nrm);
}

double Domain::exterior_ball_limit(const Vec& y) const {
  if (kind == Kind::Box)
    return 0.25 * std::min(hi[0] - lo[0], hi[1] - lo[1]);
  double r = norm(y - center);
  if (std::abs(r - inner) < std::abs(r - outer)) return inner;  // the hole itself
  return outer;
}

Vec Domain::exterior_ball_center(const Vec& y, double rho) const {
  if (rho <= 0.0) throw InputError("exterior_ball_center: rho must be positive");
  if (rho > exterior_ball_limit(y) + 1e-12)
    throw InputError("exterior_ball_center: rho exceeds the exterior-ball limit");
  return y + rho * outward_normal(y);
}

}  // namespace parabarrier
