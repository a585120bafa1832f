#include "parabarrier/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "parabarrier/errors.hpp"

namespace parabarrier {

GridField make_initial_field(const ProblemSpec& ps, const GridGeometry& geom) {
  GridField f;
  f.geom = geom;
  std::vector<double> lev(geom.nodes());
  for (int i = 0; i < geom.n1; ++i)
    for (int j = 0; j < geom.n2; ++j) lev[geom.idx(i, j)] = ps.h(geom.position(i, j), 0.0);
  f.levels.push_back(std::move(lev));
  f.times.push_back(0.0);
  return f;
}

namespace {

struct StepPlan {
  std::vector<double> rate;  // (H + χ|∇u|^Γ)/f per interior node
  double dt_limit = 1e300;   // safety-scaled stability bound
};

StepPlan plan_step(const ProblemSpec& ps, const GridField& field,
                   const SchemeContext& ctx, const StepOptions& opt) {
  const GridGeometry& g = field.geom;
  const std::vector<double>& u = field.levels.back();
  const double t = field.times.back();
  const double chi_t = ps.chi(t);
  const double dmin = g.kind == GridGeometry::Kind::Box
                          ? std::min(g.d1(), g.d2())
                          : std::min(g.d1(), g.inner * g.d2());

  StepPlan plan;
  plan.rate.assign(u.size(), 0.0);
  for (int i = 0; i < g.n1; ++i) {
    for (int j = 0; j < g.n2; ++j) {
      if (g.is_boundary(i, j)) continue;
      double uval = u[g.idx(i, j)];
      if (!std::isfinite(uval)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "solver: non-finite value at node (%d,%d)", i, j);
        throw NumericError(buf);
      }
      double fval = opt.f_override ? opt.f_override(uval) : ps.f(uval);
      if (fval < opt.f_floor)
        throw NumericError("solver: f(u) fell below the degenerate-timestep floor");
      double aug = opt.aug_coef ? opt.aug_coef(uval) : 0.0;
      SchemeEval se = apply_scheme(ctx, g, u, i, j, aug);
      double chi_term = chi_t * std::pow(se.grad_mag, ps.Gamma);
      plan.rate[g.idx(i, j)] = (se.H + chi_term) / fval;

      double chi_lip = 0.0;
      if (ps.B0 > 0.0 && ps.Gamma > 0.0) {
        double base = ps.Gamma >= 1.0 ? se.grad_mag : std::max(se.grad_mag, 1e-3);
        chi_lip = 2.0 * ps.B0 * ps.Gamma * std::pow(base, ps.Gamma - 1.0) / dmin;
      }
      double lip = se.lipschitz + chi_lip;
      if (lip > 0.0) plan.dt_limit = std::min(plan.dt_limit, opt.safety * fval / lip);
    }
  }
  return plan;
}

void apply_step(const ProblemSpec& ps, GridField& field, const StepPlan& plan,
                double dt) {
  const GridGeometry& g = field.geom;
  const std::vector<double>& u = field.levels.back();
  double t_next = field.times.back() + dt;
  std::vector<double> next(u.size());
  for (int i = 0; i < g.n1; ++i) {
    for (int j = 0; j < g.n2; ++j) {
      int ix = g.idx(i, j);
      if (g.is_boundary(i, j)) {
        next[ix] = ps.h(g.position(i, j), t_next);
      } else {
        next[ix] = u[ix] + dt * plan.rate[ix];
        if (!std::isfinite(next[ix])) {
          char buf[112];
          std::snprintf(buf, sizeof(buf),
                        "solver: divergence, first bad node (%d,%d) at t=%.6g", i, j,
                        t_next);
          throw NumericError(buf);
        }
      }
    }
  }
  field.levels.push_back(std::move(next));
  field.times.push_back(t_next);
  field.dt_history.push_back(dt);
}

}  // namespace

void step(const ProblemSpec& ps, GridField& field, SchemeKey scheme,
          const StepOptions& opt) {
  SchemeContext ctx = make_scheme_context(scheme, ps.op);
  StepPlan plan = plan_step(ps, field, ctx, opt);
  double dt = plan.dt_limit;
  if (opt.dt_cap > 0.0) dt = std::min(dt, opt.dt_cap);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw NumericError("solver: no admissible time step");
  apply_step(ps, field, plan, dt);
}

GridField solve(const ProblemSpec& ps, GridField u0, SchemeKey scheme, double until,
                const StepOptions& opt) {
  SchemeContext ctx = make_scheme_context(scheme, ps.op);
  GridField f = std::move(u0);
  while (f.times.back() < until - 1e-14) {
    StepPlan plan = plan_step(ps, f, ctx, opt);
    double dt = plan.dt_limit;
    if (opt.dt_cap > 0.0) dt = std::min(dt, opt.dt_cap);
    dt = std::min(dt, until - f.times.back());  // land exactly on the horizon
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw NumericError("solver: no admissible time step");
    apply_step(ps, f, plan, dt);
  }
  return f;
}

std::pair<GridField, GridField> solve_pair(const ProblemSpec& a, const ProblemSpec& b,
                                           const GridGeometry& geom, SchemeKey scheme,
                                           double until, const StepOptions& opt) {
  SchemeContext ca = make_scheme_context(scheme, a.op);
  SchemeContext cb = make_scheme_context(scheme, b.op);
  GridField fa = make_initial_field(a, geom);
  GridField fb = make_initial_field(b, geom);
  while (fa.times.back() < until - 1e-14) {
    StepPlan pa = plan_step(a, fa, ca, opt);
    StepPlan pb = plan_step(b, fb, cb, opt);
    double dt = std::min(pa.dt_limit, pb.dt_limit);
    if (opt.dt_cap > 0.0) dt = std::min(dt, opt.dt_cap);
    dt = std::min(dt, until - fa.times.back());
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw NumericError("solve_pair: no admissible time step");
    apply_step(a, fa, pa, dt);
    apply_step(b, fb, pb, dt);
  }
  return {std::move(fa), std::move(fb)};
}

double grid_tolerance(const GridField& f, double c1) {
  const GridGeometry& g = f.geom;
  double dx = g.kind == GridGeometry::Kind::Box ? std::max(g.d1(), g.d2())
                                                : std::max(g.d1(), g.outer * g.d2());
  double dt = 0.0;
  for (double d : f.dt_history) dt = std::max(dt, d);
  return c1 * (dx + dt);
}

namespace {

void require_same_lattice(const GridField& a, const GridField& b, const char* who) {
  if (a.geom.n1 != b.geom.n1 || a.geom.n2 != b.geom.n2 || a.nt() != b.nt())
    throw InputError(std::string(who) + ": fields live on different lattices");
  for (int m = 0; m < a.nt(); ++m)
    if (std::abs(a.times[m] - b.times[m]) > 1e-12 * std::max(1.0, a.times.back()))
      throw InputError(std::string(who) + ": fields have different time levels");
}

template <typename F>
void worst_over_lattice(const GridField& f, GridCheckReport& rep, F&& gap_fn) {
  for (int m = 0; m < f.nt(); ++m)
    for (int i = 0; i < f.geom.n1; ++i)
      for (int j = 0; j < f.geom.n2; ++j) {
        double gap = gap_fn(m, i, j);
        if (gap > rep.worst) {
          rep.worst = gap;
          rep.level = m;
          rep.i = i;
          rep.j = j;
        }
      }
}

}  // namespace

GridCheckReport check_comparison(const GridField& sub, const GridField& sup, double c1,
                                 const PhiSolution* phi) {
  require_same_lattice(sub, sup, "check_comparison");
  GridCheckReport rep;
  rep.name = "comparison";
  rep.tol = grid_tolerance(sub, c1);
  worst_over_lattice(sub, rep, [&](int m, int i, int j) {
    return sub.at(m, i, j) - sup.at(m, i, j);
  });
  rep.passed = rep.worst <= rep.tol;

  if (phi != nullptr && rep.passed) {
    // general form u ≤ φ(φ⁻¹(v) + sup_PT (φ⁻¹u - φ⁻¹v)⁺)
    double k0 = 0.0;
    const GridGeometry& g = sub.geom;
    auto visit = [&](int m, int i, int j) {
      k0 = std::max(k0, phi->phi_inverse(sub.at(m, i, j)) -
                            phi->phi_inverse(sup.at(m, i, j)));
    };
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) visit(0, i, j);
    for (int m = 0; m < sub.nt(); ++m)
      for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j)
          if (g.is_boundary(i, j)) visit(m, i, j);
    GridCheckReport gen;
    gen.tol = rep.tol;
    worst_over_lattice(sub, gen, [&](int m, int i, int j) {
      double bound = phi->phi(phi->phi_inverse(sup.at(m, i, j)) + k0);
      return sub.at(m, i, j) - bound;
    });
    if (gen.worst > gen.tol) {
      rep.passed = false;
      rep.worst = gen.worst;
      rep.level = gen.level;
      rep.i = gen.i;
      rep.j = gen.j;
    }
  }
  return rep;
}

GridCheckReport check_quotient(const GridField& u, const GridField& v, double c1) {
  require_same_lattice(u, v, "check_quotient");
  GridCheckReport rep;
  rep.name = "quotient_comparison";
  rep.tol = grid_tolerance(u, c1);
  const GridGeometry& g = u.geom;
  double boundary_ratio = 0.0;
  auto visit = [&](int m, int i, int j) {
    if (v.at(m, i, j) <= 0.0)
      throw InputError("check_quotient: requires positive comparison field");
    boundary_ratio = std::max(boundary_ratio, u.at(m, i, j) / v.at(m, i, j));
  };
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) visit(0, i, j);
  for (int m = 0; m < u.nt(); ++m)
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        if (g.is_boundary(i, j)) visit(m, i, j);
  double bound = std::max(boundary_ratio, 1.0);
  worst_over_lattice(u, rep, [&](int m, int i, int j) {
    return u.at(m, i, j) - bound * v.at(m, i, j);
  });
  rep.passed = rep.worst <= rep.tol;
  return rep;
}

GridCheckReport check_max_principle(const GridField& f, double c1) {
  GridCheckReport rep;
  rep.name = "max_principle";
  rep.tol = grid_tolerance(f, c1);
  const GridGeometry& g = f.geom;
  double pmax = -1e300, pmin = 1e300;
  auto visit = [&](int m, int i, int j) {
    pmax = std::max(pmax, f.at(m, i, j));
    pmin = std::min(pmin, f.at(m, i, j));
  };
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) visit(0, i, j);
  for (int m = 0; m < f.nt(); ++m)
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        if (g.is_boundary(i, j)) visit(m, i, j);
  worst_over_lattice(f, rep, [&](int m, int i, int j) {
    double v = f.at(m, i, j);
    return std::max(v - pmax, pmin - v);
  });
  rep.passed = rep.worst <= rep.tol;
  return rep;
}

SandwichReport check_sandwich(const ProblemSpec&, const GridField& field,
                              const std::vector<BarrierSpec>& bumps,
                              const std::vector<BarrierSpec>& indents, double c1) {
  SandwichReport out;
  out.check.name = "sandwich";
  out.check.tol = grid_tolerance(field, c1);
  const GridGeometry& g = field.geom;
  worst_over_lattice(field, out.check, [&](int m, int i, int j) {
    Vec x = g.position(i, j);
    double t = field.times[m];
    double v = field.at(m, i, j);
    double gap = -1e300;
    for (const BarrierSpec& b : bumps) gap = std::max(gap, b.value(x, t) - v);
    for (const BarrierSpec& b : indents) gap = std::max(gap, v - b.value(x, t));
    return gap;
  });
  out.check.passed = out.check.worst <= out.check.tol;

  auto nearest_gap = [&](const BarrierSpec& b) {
    // field at the node/level nearest the anchor against the barrier's exact
    // anchor value h(y,s) ∓ 2ε; the gap approaches 2ε + O(grid)
    int bi = 0, bj = 0, bm = 0;
    double best = 1e300;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        double d = norm(g.position(i, j) - b.anchor);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    double bt = 1e300;
    for (int m = 0; m < field.nt(); ++m)
      if (std::abs(field.times[m] - b.s) < bt) {
        bt = std::abs(field.times[m] - b.s);
        bm = m;
      }
    return std::abs(field.at(bm, bi, bj) - b.value(b.anchor, b.s));
  };
  for (const BarrierSpec& b : bumps) out.anchor_gaps.push_back(nearest_gap(b));
  for (const BarrierSpec& b : indents) out.anchor_gaps.push_back(nearest_gap(b));
  return out;
}

}  // namespace parabarrier
