#include "parabarrier/problem.hpp"

#include <algorithm>
#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

ChiSpec ChiSpec::constant(double v) {
  ChiSpec c;
  c.kind = Kind::Constant;
  c.value = v;
  return c;
}

ChiSpec ChiSpec::sinusoid(double amplitude, double period) {
  if (period <= 0.0) throw InputError("ChiSpec::sinusoid: period must be positive");
  ChiSpec c;
  c.kind = Kind::Sinusoid;
  c.amplitude = amplitude;
  c.period = period;
  return c;
}

double ChiSpec::operator()(double t) const {
  if (kind == Kind::Constant) return value;
  return amplitude * std::sin(2.0 * M_PI * t / period);
}

double ChiSpec::sup_abs() const {
  return kind == Kind::Constant ? std::abs(value) : std::abs(amplitude);
}

namespace {

// Dense sample of Ω̄ at t = 0 plus ∂Ω × [0, T).
template <typename F>
void for_each_parabolic_sample(const Domain& dom, double T, int boundary_samples,
                               int bottom_samples, int time_samples, F&& fn) {
  if (dom.kind == Domain::Kind::Box) {
    for (int i = 0; i < bottom_samples; ++i) {
      for (int j = 0; j < bottom_samples; ++j) {
        Vec x{dom.lo[0] + (dom.hi[0] - dom.lo[0]) * i / (bottom_samples - 1),
              dom.lo[1] + (dom.hi[1] - dom.lo[1]) * j / (bottom_samples - 1)};
        fn(x, 0.0);
      }
    }
  } else {
    int nr = std::max(8, bottom_samples / 4), nth = bottom_samples;
    for (int i = 0; i < nr; ++i) {
      double r = dom.inner + (dom.outer - dom.inner) * i / (nr - 1);
      for (int j = 0; j < nth; ++j) {
        double th = 2.0 * M_PI * j / nth;
        fn(Vec{dom.center[0] + r * std::cos(th), dom.center[1] + r * std::sin(th)}, 0.0);
      }
    }
  }
  std::vector<Vec> bpts = dom.boundary_points(boundary_samples);
  for (int j = 0; j < time_samples; ++j) {
    double t = T * j / static_cast<double>(time_samples);  // [0, T)
    for (const Vec& x : bpts) fn(x, t);
  }
}

}  // namespace

void ProblemSpec::finalize(int boundary_samples, int bottom_samples, int time_samples) {
  if (T <= 0.0) throw InputError("ProblemSpec: horizon T must be positive");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for_each_parabolic_sample(domain, T, boundary_samples, bottom_samples, time_samples,
                            [&](const Vec& x, double t) {
                              double v = h(x, t);
                              lo = std::min(lo, v);
                              hi = std::max(hi, v);
                            });
  theta_inf = lo;
  M_sup = hi;
  if (part_one() && theta_inf <= 0.0)
    throw InputError("ProblemSpec: Part I requires inf h > 0 on the parabolic boundary");

  B0 = chi.sup_abs();
  if (nl) {
    double a = theta_inf / 2.0, b = 2.0 * M_sup;
    if (a <= nl->domain_floor)
      throw InputError("ProblemSpec: [theta/2, 2M] leaves the domain of f");
    if (nl->increasing) {
      omega = nl->f(a);
      nu = nl->f(b);
    } else {
      omega = std::numeric_limits<double>::infinity();
      nu = -omega;
      const int ns = 4097;
      for (int i = 0; i < ns; ++i) {
        double u = a + (b - a) * i / (ns - 1);
        double v = nl->f(u);
        omega = std::min(omega, v);
        nu = std::max(nu, v);
      }
    }
    if (omega <= 0.0)
      throw InputError("ProblemSpec: f must stay positive on [theta/2, 2M]");
  } else {
    omega = nu = 1.0;
  }
  finalized = true;
}

double ProblemSpec::default_eps() const {
  return std::min(0.5, theta_inf / 8.0);
}

namespace {

double window_oscillation(const ProblemSpec& ps, const Vec& y, double s, double wr,
                          double wt) {
  const double href = ps.h(y, s);
  double worst = 0.0;
  auto visit = [&](const Vec& x, double t) {
    worst = std::max(worst, std::abs(ps.h(x, t) - href));
  };
  // bottom slice, if the time window reaches t = 0
  if (s - wt <= 0.0) {
    const int nr = 13, nth = 24;
    for (int i = 1; i <= nr; ++i) {
      double r = wr * i / nr;
      for (int j = 0; j < nth; ++j) {
        double th = 2.0 * M_PI * j / nth;
        Vec x{y[0] + r * std::cos(th), y[1] + r * std::sin(th)};
        if (ps.domain.contains(x)) visit(x, 0.0);
      }
    }
    if (ps.domain.contains(y)) visit(y, 0.0);
  }
  // lateral boundary within the spatial window
  const int nb = 1024, nt = 17;
  for (int i = 0; i < nb; ++i) {
    Vec x = ps.domain.boundary_point((i + 0.5) / static_cast<double>(nb));
    if (norm(x - y) > wr) continue;
    for (int j = 0; j < nt; ++j) {
      double t = s - wt + 2.0 * wt * j / (nt - 1);
      if (t < 0.0 || t >= ps.T) continue;
      visit(x, t);
    }
  }
  return worst;
}

}  // namespace

OscWindow oscillation_window(const ProblemSpec& ps, const Vec& y, double s, double eps) {
  if (!ps.finalized) throw InputError("oscillation_window: ProblemSpec not finalized");
  const double diam = ps.domain.diameter();
  double dist = ps.domain.dist_to_boundary(y);
  bool interior_initial = s == 0.0 && dist > 0.0;

  double wr = 1e-3 * diam;
  double wt = 1e-3 * ps.T;
  double cap_r = interior_initial ? dist : diam;

  auto osc = [&](double r, double t) {
    if (interior_initial) {
      // only the bottom slice is nearby; time extent is irrelevant
      return window_oscillation(ps, y, 0.0, r, 0.0);
    }
    return window_oscillation(ps, y, s, r, t);
  };

  if (osc(std::min(wr, cap_r), wt) > eps) {
    // shrink until the data oscillates by at most eps
    while (osc(std::min(wr, cap_r), wt) > eps) {
      wr *= 0.5;
      wt *= 0.5;
      if (wr < 1e-9 * diam)
        throw ConstructionError(
            "oscillation_window: no window with oscillation <= eps (data too rough)");
    }
  } else {
    // expand while the oscillation stays within eps
    while (wr < cap_r || wt < ps.T) {
      double nr = std::min(2.0 * wr, cap_r);
      double nt = std::min(2.0 * wt, ps.T);
      if (nr == wr && nt == wt) break;
      if (osc(std::min(nr, cap_r), nt) > eps) break;
      wr = nr;
      wt = nt;
    }
  }
  OscWindow w;
  w.delta0 = std::min(wr, cap_r);
  w.tau0 = interior_initial ? ps.T : 0.5 * wt;
  return w;
}

}  // namespace parabarrier
