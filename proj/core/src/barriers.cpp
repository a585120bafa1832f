#include "parabarrier/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "parabarrier/errors.hpp"

namespace parabarrier {

namespace {

constexpr int kMaxHalvings = 60;
constexpr double kCenterExclusion = 1e-8;

bool is_side(BarrierFamily f) {
  return f != BarrierFamily::InitBump && f != BarrierFamily::InitIndent;
}

void validate_problem(const ProblemSpec& ps, double eps) {
  if (!ps.finalized) throw InputError("barrier build: ProblemSpec not finalized");
  if (ps.theta_inf <= 0.0)
    throw InapplicableError(
        "barrier build: requires inf h > 0 (shift the data per the f==1 reduction)");
  if (!(eps > 0.0 && 2.0 * eps < ps.theta_inf / 2.0))
    throw InputError("barrier build: eps must satisfy 0 < theta/2 < theta - 2 eps");
  if (ps.part_one()) {
    if (ps.k() <= 1.0)
      throw InapplicableError("barrier build: doubly nonlinear case requires k > 1");
    if (std::abs(ps.Gamma - ps.k()) > 1e-9 * std::max(1.0, ps.k()))
      throw InapplicableError("barrier build: doubly nonlinear case requires Gamma = k");
  } else {
    if (!(ps.Gamma > 0.0 && ps.Gamma < ps.gamma()))
      throw InapplicableError("barrier build: f == 1 case requires 0 < Gamma < gamma");
  }
}

// sup over [theta/2, 2M] of A^{Gamma-k}, the Part II amplitude factor
double amplitude_power(const ProblemSpec& ps) {
  double d = ps.Gamma - ps.k();
  return d >= 0.0 ? std::pow(2.0 * ps.M_sup, d) : std::pow(ps.theta_inf / 2.0, d);
}

BarrierSpec make_constant_barrier(const ProblemSpec& ps, BarrierFamily family,
                                  const Vec& y, double s, double eps, double level) {
  BarrierSpec bar;
  bar.family = family;
  bar.part = ps.part_one() ? Part::I : Part::II;
  bar.is_bump = family == BarrierFamily::InitBump || family == BarrierFamily::SideBumpI ||
                family == BarrierFamily::SideBumpII;
  bar.constant_barrier = true;
  bar.anchor = y;
  bar.s = s;
  bar.epsilon = eps;
  bar.amp = bar.outside_value = bar.anchor_value = level;
  bar.center = y;
  bar.horizon = ps.T;
  return bar;
}

}  // namespace

std::string to_string(BarrierFamily f) {
  switch (f) {
    case BarrierFamily::InitBump: return "init_bump";
    case BarrierFamily::InitIndent: return "init_indent";
    case BarrierFamily::SideBumpI: return "side_bump_case1";
    case BarrierFamily::SideIndentI: return "side_indent_case1";
    case BarrierFamily::SideBumpII: return "side_bump_case2";
    case BarrierFamily::SideIndentII: return "side_indent_case2";
  }
  return "?";
}

double BarrierSpec::time_factor(double t) const {
  double dt = std::abs(t - s);
  return is_bump ? std::exp(c.ell * (c.tau - dt)) : std::exp(c.ell * (dt - c.tau));
}

double BarrierSpec::r_max_at(double t) const {
  if (constant_barrier) return 0.0;
  double dt = std::abs(t - s);
  if (dt > c.tau) return r_lo;
  switch (family) {
    case BarrierFamily::InitBump:
    case BarrierFamily::SideBumpI: {
      double q = 1.0 - std::exp(-c.ell * (c.tau - dt));
      return std::pow(q / c.b, 1.0 / c.beta);
    }
    case BarrierFamily::InitIndent:
    case BarrierFamily::SideIndentI: {
      double q = std::exp(c.ell * (c.tau - dt)) - 1.0;
      return std::pow(q / c.b, 1.0 / c.beta);
    }
    case BarrierFamily::SideBumpII: {
      double q = (1.0 - std::exp(-c.ell * (c.tau - dt))) / c.b;
      double w = 1.0 - q;
      if (w <= std::pow(2.0, -c.beta)) return r_hi;
      return c.rho * std::pow(w, -1.0 / c.beta);
    }
    case BarrierFamily::SideIndentII: {
      double q = (std::exp(c.ell * (c.tau - dt)) - 1.0) / c.b;
      double w = 1.0 - q;
      if (w <= std::pow(2.0, -c.beta)) return r_hi;
      return c.rho * std::pow(w, -1.0 / c.beta);
    }
  }
  return r_lo;
}

bool BarrierSpec::in_region(const Vec& x, double t) const {
  if (constant_barrier) return false;
  if (t < t_lo || t > t_hi) return false;
  double dt = std::abs(t - s);
  if (dt > c.tau) return false;
  double r = norm(x - center);
  return r >= r_lo && r <= r_max_at(t);
}

double BarrierSpec::value(const Vec& x, double t) const {
  if (!in_region(x, t)) return outside_value;
  double r = norm(x - center);
  return amp * time_factor(t) * (spatial_a + spatial_b * std::pow(r, spatial_beta));
}

GradHess BarrierSpec::space_derivs(const Vec& x, double t) const {
  double tf = amp * time_factor(t);
  RadialProfile prof =
      RadialProfile::power(tf * spatial_a, tf * spatial_b, spatial_beta, center);
  return radial_gradient_hessian(prof, x);
}

double BarrierSpec::time_deriv(const Vec& x, double t) const {
  double sgn = t >= s ? 1.0 : -1.0;
  double v = value(x, t);
  return is_bump ? -c.ell * sgn * v : c.ell * sgn * v;
}

double BarrierSpec::time_slice_bound(const Vec& x) const {
  return c.ell * value(x, s);
}

// ---- builders ------------------------------------------------------------

namespace {

BarrierSpec build_init(const ProblemSpec& ps, BarrierKind kind, const Vec& y, double eps,
                       double delta_hint) {
  validate_problem(ps, eps);
  const bool bump = kind == BarrierKind::Bump;
  const BarrierFamily family = bump ? BarrierFamily::InitBump : BarrierFamily::InitIndent;
  const double theta = ps.theta_inf, M = ps.M_sup;
  const double h_anchor = ps.h(y, 0.0);

  if (bump && h_anchor <= theta + 1e-9 * std::max(1.0, theta))
    return make_constant_barrier(ps, family, y, 0.0, eps, theta);
  if (!bump && h_anchor >= M - 1e-9 * std::max(1.0, M))
    return make_constant_barrier(ps, family, y, 0.0, eps, M);

  OscWindow win = oscillation_window(ps, y, 0.0, eps);
  double mu0 = mu_exact(ps.op, 0.0);
  if (mu0 <= 0.0)
    throw ConstructionError("init barrier: mu(0) must be positive, got " +
                            std::to_string(mu0));

  const double k = ps.k(), k1 = ps.op.k1, k2 = ps.op.k2;
  const double L = bump ? std::log((h_anchor - 2.0 * eps) / (theta - 2.0 * eps))
                        : std::log((M + 2.0 * eps) / (h_anchor + 2.0 * eps));
  const bool boundary_anchor =
      ps.domain.dist_to_boundary(y) <= 1e-9 * ps.domain.diameter();

  double delta = win.delta0;
  if (delta_hint > 0.0) delta = std::min(delta, delta_hint);

  double b = 0.0, ell = 0.0, tau = 0.0;
  bool ok = false;
  for (int it = 0; it < kMaxHalvings && !ok; ++it) {
    b = (bump ? 1.0 - std::exp(-L) : std::exp(L) - 1.0) / (delta * delta);
    if (ps.part_one()) {
      ell = bump ? 3.0 * std::pow(8.0 * b, k) * std::pow(delta, k1) * mu0 *
                       std::pow(M, 2.0 * k - 1.0) / (ps.omega * std::pow(theta, k))
                 : 3.0 * std::pow(4.0 * b, k) * std::pow(delta, k1) *
                       std::pow(M, k - 1.0) * mu0 / ps.omega;
    } else {
      // f == 1: only "ell large" is prescribed; the explicit bound below makes
      // the residual chain close with a factor-2 margin.
      double rhs = ps.B0 * std::pow(2.0 * b * delta, ps.Gamma) * amplitude_power(ps) +
                   std::pow(2.0 * b, k) * std::pow(delta, k1) * mu0;
      ell = bump ? 2.0 * std::pow(M, k - 1.0) * std::exp(k * L) * rhs
                 : 2.0 * std::pow(2.0 * M, k - 1.0) * rhs;
    }
    tau = L / ell;
    ok = tau < ps.T;
    if (boundary_anchor) ok = ok && tau <= win.tau0;
    if (ps.part_one()) ok = ok && ps.B0 * std::pow(delta, k2) <= 2.0 * mu0;
    if (!ok) delta *= 0.5;
  }
  if (!ok)
    throw ConstructionError("init barrier: side conditions unmet after " +
                            std::to_string(kMaxHalvings) + " delta halvings");

  BarrierSpec bar;
  bar.family = family;
  bar.part = ps.part_one() ? Part::I : Part::II;
  bar.is_bump = bump;
  bar.anchor = y;
  bar.s = 0.0;
  bar.epsilon = eps;
  bar.amp = bar.outside_value = bump ? theta - 2.0 * eps : M + 2.0 * eps;
  bar.anchor_value = bump ? h_anchor - 2.0 * eps : h_anchor + 2.0 * eps;
  bar.c = {ell, tau, b, 2.0, L, delta, 0.0};
  bar.center = y;
  bar.spatial_a = 1.0;
  bar.spatial_b = bump ? -b : b;
  bar.spatial_beta = 2.0;
  bar.r_lo = 0.0;
  bar.r_hi = delta;
  bar.t_lo = 0.0;
  bar.t_hi = std::min(tau, ps.T);
  bar.horizon = ps.T;
  bar.mu_used = mu0;
  bar.lambda_used = 0.0;
  return bar;
}

BarrierSpec build_side1(const ProblemSpec& ps, BarrierKind kind, const Vec& y, double s,
                        double eps, std::optional<double> lambda_bar_override) {
  validate_problem(ps, eps);
  if (!(s > 0.0 && s < ps.T))
    throw InputError("side barrier: anchor time must satisfy 0 < s < T");
  if (ps.domain.dist_to_boundary(y) > 1e-7 * ps.domain.diameter())
    throw InputError("side barrier: anchor must lie on the lateral boundary");

  const bool bump = kind == BarrierKind::Bump;
  const BarrierFamily family =
      bump ? BarrierFamily::SideBumpI : BarrierFamily::SideIndentI;
  const double theta = ps.theta_inf, M = ps.M_sup;
  const double h_anchor = ps.h(y, s);

  if (bump && h_anchor <= theta + 1e-9 * std::max(1.0, theta))
    return make_constant_barrier(ps, family, y, s, eps, theta);
  if (!bump && h_anchor >= M - 1e-9 * std::max(1.0, M))
    return make_constant_barrier(ps, family, y, s, eps, M);

  if (!lambda_bar_override && ps.coer.case_tag != CaseTag::CaseI)
    throw InapplicableError("side case (i) barrier: no Case (i) certificate");
  double lbar = lambda_bar_override.value_or(ps.coer.lambda_bar);
  if (!(lbar > 1.0 && lbar < 2.0))
    throw InputError("side case (i) barrier: lambda_bar must lie in (1,2)");
  double mul = mu_exact(ps.op, lbar);
  if (mul >= -1e-12)
    throw InapplicableError("side case (i) barrier: mu(lambda_bar) is not negative");
  const double abs_mu = -mul;

  OscWindow win = oscillation_window(ps, y, s, eps);
  const double k = ps.k(), k2 = ps.op.k2, gamma = ps.gamma();
  const double beta = 2.0 - lbar;
  const double L = bump ? std::log((h_anchor - 2.0 * eps) / (theta - 2.0 * eps))
                        : std::log((M + 2.0 * eps) / (h_anchor + 2.0 * eps));
  const double ell = L / win.tau0;
  const double tau = win.tau0;
  const double q_geo = bump ? 1.0 - std::exp(-L) : std::exp(L) - 1.0;
  const double nu_eff = ps.part_one() ? ps.nu : 1.0;

  double b_min =
      bump ? std::pow(2.0 * ell * nu_eff /
                          (abs_mu * std::pow(beta, k) * std::pow(theta / 2.0, k - 1.0)),
                      1.0 / k)
           : std::pow(8.0 * M * ell * nu_eff / (std::pow(theta * beta, k) * abs_mu),
                      1.0 / k);
  double b = std::max(b_min, q_geo / std::pow(win.delta0, beta));
  double delta = 0.0;
  bool ok = false;
  for (int it = 0; it < kMaxHalvings && !ok; ++it) {
    delta = std::pow(q_geo / b, 1.0 / beta);
    ok = delta <= 1.0 && delta <= win.delta0 * (1.0 + 1e-12);
    if (ps.part_one()) {
      ok = ok && ps.B0 * std::pow(delta, k2) <= abs_mu / 2.0;
    } else {
      double a_exp = gamma - k * beta - ps.Gamma * (1.0 - beta);
      double chi_term = ps.B0 * std::pow(beta * b, ps.Gamma - k) * amplitude_power(ps) *
                        std::pow(delta, a_exp);
      ok = ok && chi_term <= abs_mu / 2.0;
    }
    if (!ok) b *= 2.0;
  }
  if (!ok)
    throw ConstructionError("side case (i) barrier: side conditions unmet after " +
                            std::to_string(kMaxHalvings) + " b doublings");

  BarrierSpec bar;
  bar.family = family;
  bar.part = ps.part_one() ? Part::I : Part::II;
  bar.is_bump = bump;
  bar.anchor = y;
  bar.s = s;
  bar.epsilon = eps;
  bar.amp = bar.outside_value = bump ? theta - 2.0 * eps : M + 2.0 * eps;
  bar.anchor_value = bump ? h_anchor - 2.0 * eps : h_anchor + 2.0 * eps;
  bar.c = {ell, tau, b, beta, L, delta, 0.0};
  bar.center = y;
  bar.spatial_a = 1.0;
  bar.spatial_b = bump ? -b : b;
  bar.spatial_beta = beta;
  bar.r_lo = 0.0;
  bar.r_hi = delta;
  bar.t_lo = std::max(0.0, s - tau);
  bar.t_hi = std::min(ps.T, s + tau);
  bar.horizon = ps.T;
  bar.mu_used = mul;
  bar.lambda_used = lbar;
  return bar;
}

BarrierSpec build_side2(const ProblemSpec& ps, BarrierKind kind, const Vec& y, double s,
                        double eps, double beta_margin) {
  validate_problem(ps, eps);
  if (!(s > 0.0 && s < ps.T))
    throw InputError("side barrier: anchor time must satisfy 0 < s < T");
  if (ps.domain.dist_to_boundary(y) > 1e-7 * ps.domain.diameter())
    throw InputError("side barrier: anchor must lie on the lateral boundary");
  if (beta_margin <= 0.0)
    throw InputError("side case (ii) barrier: beta margin must be positive");

  const bool bump = kind == BarrierKind::Bump;
  const BarrierFamily family =
      bump ? BarrierFamily::SideBumpII : BarrierFamily::SideIndentII;
  const double theta = ps.theta_inf, M = ps.M_sup;
  const double h_anchor = ps.h(y, s);

  if (bump && h_anchor <= theta + 1e-9 * std::max(1.0, theta))
    return make_constant_barrier(ps, family, y, s, eps, theta);
  if (!bump && h_anchor >= M - 1e-9 * std::max(1.0, M))
    return make_constant_barrier(ps, family, y, s, eps, M);

  if (ps.coer.case_tag != CaseTag::CaseII)
    throw InapplicableError("side case (ii) barrier: no Case (ii) certificate");
  const double beta = ps.coer.lambda_bar - 2.0 + beta_margin;
  const double lambda = beta + 2.0;
  double mul = mu_exact(ps.op, lambda);
  if (mul >= -1e-12)
    throw InapplicableError("side case (ii) barrier: mu(beta+2) is not negative");
  const double abs_mu = -mul;

  double rho_limit = ps.domain.exterior_ball_limit(y);
  if (ps.rho0) rho_limit = std::min(rho_limit, *ps.rho0);
  if (!(rho_limit > 0.0))
    throw InapplicableError("side case (ii) barrier: no exterior ball available");

  OscWindow win = oscillation_window(ps, y, s, eps);
  const double k = ps.k(), gamma = ps.gamma();
  const double L = bump ? std::log((h_anchor - 2.0 * eps) / (theta - 2.0 * eps))
                        : std::log((M + 2.0 * eps) / (h_anchor + 2.0 * eps));
  const double ell = L / win.tau0;
  const double tau = win.tau0;
  const double q_geo = bump ? 1.0 - std::exp(-L) : std::exp(L) - 1.0;
  const double chat = q_geo / (1.0 - std::pow(2.0, -beta));
  const double nu_eff = ps.part_one() ? ps.nu : 1.0;

  // final inequality of the residual chain, solved for rho^gamma
  const double rho_cap =
      bump ? std::pow(beta, k) * abs_mu * std::pow(chat, k) * std::pow(theta, k - 1.0) /
                 (std::pow(2.0, beta * k + gamma + k) * nu_eff * ell)
           : std::pow(beta, k) * abs_mu * std::pow(chat, k) *
                 std::pow(theta / 2.0, k - 1.0) /
                 (std::pow(2.0, beta * k + gamma + 2.0) * nu_eff * ell * std::exp(L));

  double rho = std::min(rho_limit, win.delta0 / 4.0);
  if (ps.B0 > 0.0)
    rho = std::min(rho, 0.5 * std::pow(abs_mu / (2.0 * ps.B0), 1.0 / (gamma - k)));
  bool ok = false;
  for (int it = 0; it < kMaxHalvings && !ok; ++it) {
    ok = std::pow(rho, gamma) <= rho_cap;
    if (!ps.part_one()) {
      double ratio_pow = std::max(1.0, std::pow(2.0, beta * (k - ps.Gamma)));
      double chi_term = ps.B0 * std::pow(chat * beta, ps.Gamma - k) *
                        amplitude_power(ps) * std::pow(2.0 * rho, gamma - ps.Gamma) *
                        ratio_pow;
      ok = ok && chi_term <= abs_mu / 2.0;
    }
    if (!ok) rho *= 0.5;
  }
  if (!ok)
    throw ConstructionError("side case (ii) barrier: side conditions unmet after " +
                            std::to_string(kMaxHalvings) + " rho halvings");

  Vec z = ps.domain.exterior_ball_center(y, rho);

  BarrierSpec bar;
  bar.family = family;
  bar.part = ps.part_one() ? Part::I : Part::II;
  bar.is_bump = bump;
  bar.anchor = y;
  bar.s = s;
  bar.epsilon = eps;
  bar.amp = bar.outside_value = bump ? theta - 2.0 * eps : M + 2.0 * eps;
  bar.anchor_value = bump ? h_anchor - 2.0 * eps : h_anchor + 2.0 * eps;
  bar.c = {ell, tau, chat, beta, L, 0.0, rho};
  bar.center = z;
  bar.spatial_a = bump ? 1.0 - chat : 1.0 + chat;
  bar.spatial_b = (bump ? chat : -chat) * std::pow(rho, beta);
  bar.spatial_beta = -beta;
  bar.r_lo = rho;
  bar.r_hi = 2.0 * rho;
  bar.t_lo = std::max(0.0, s - tau);
  bar.t_hi = std::min(ps.T, s + tau);
  bar.horizon = ps.T;
  bar.mu_used = mul;
  bar.lambda_used = lambda;
  return bar;
}

}  // namespace

BarrierSpec build_init_bump(const ProblemSpec& ps, const Vec& y, double eps,
                            double delta_hint) {
  return build_init(ps, BarrierKind::Bump, y, eps, delta_hint);
}

BarrierSpec build_init_indent(const ProblemSpec& ps, const Vec& y, double eps,
                              double delta_hint) {
  return build_init(ps, BarrierKind::Indent, y, eps, delta_hint);
}

BarrierSpec build_side_case1(const ProblemSpec& ps, BarrierKind kind, const Vec& y,
                             double s, double eps,
                             std::optional<double> lambda_bar_override) {
  return build_side1(ps, kind, y, s, eps, lambda_bar_override);
}

BarrierSpec build_side_case2(const ProblemSpec& ps, BarrierKind kind, const Vec& y,
                             double s, double eps, double beta_margin) {
  return build_side2(ps, kind, y, s, eps, beta_margin);
}

// ---- verification --------------------------------------------------------

namespace {

struct ResidualParts {
  double residual = 0.0;
  double h_value = 0.0;
};

ResidualParts residual_parts(const ProblemSpec& ps, const BarrierSpec& bar, const Vec& x,
                             double t, bool slice_mode) {
  GradHess gh = bar.space_derivs(x, t);
  double hv = evaluate(ps.op, gh.grad, gh.hess);
  double chi_term = ps.chi(t) * std::pow(norm(gh.grad), ps.Gamma);
  double v = bar.value(x, t);
  double ft;
  if (slice_mode) {
    // worst admissible test-function time derivative at the t = s kink
    double bound = bar.time_slice_bound(x);
    ft = bar.is_bump ? ps.f(v) * bound : -ps.f(v) * bound;
  } else {
    ft = ps.f(v) * bar.time_deriv(x, t);
  }
  return {hv + chi_term - ft, hv};
}

}  // namespace

double barrier_residual(const ProblemSpec& ps, const BarrierSpec& bar, const Vec& x,
                        double t) {
  return residual_parts(ps, bar, x, t, false).residual;
}

ResidualReport verify_inequality(const ProblemSpec& ps, const BarrierSpec& bar,
                                 int samples, std::uint64_t rng_seed, double tol) {
  ResidualReport rep;
  rep.barrier = to_string(bar.family);
  if (bar.constant_barrier) {
    // constants solve the equation exactly: H(p, O) = 0 and zero derivatives
    rep.samples = samples;
    return rep;
  }
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const bool side = is_side(bar.family);
  int slice_n = side ? std::max(100, samples / 10) : 0;
  int bulk = samples - slice_n;
  int nt = std::max(16, static_cast<int>(std::sqrt(bulk / 4.0)));

  bool first = true;
  auto track = [&](double res, double hval, const Vec& x, double t) {
    if (first) {
      rep.min_residual = rep.max_residual = res;
      first = false;
    }
    rep.min_residual = std::min(rep.min_residual, res);
    rep.max_residual = std::max(rep.max_residual, res);
    double margin = res / std::max(1.0, std::abs(hval));
    bool violated = bar.is_bump ? margin < -tol : margin > tol;
    double badness = bar.is_bump ? -margin : margin;
    if (badness > rep.worst_margin) {
      rep.worst_margin = badness;
      rep.worst_x = x;
      rep.worst_t = t;
    }
    if (violated) {
      ++rep.violations;
      rep.passed = false;
    }
  };

  const double span = bar.t_hi - bar.t_lo;
  for (int i = 0; i < bulk; ++i) {
    int it = i % nt;
    double t = bar.t_lo + span * (it + u01(rng)) / nt;
    if (t <= bar.t_lo) t = bar.t_lo + 1e-12 * span;
    if (side && std::abs(t - bar.s) < 1e-12 * std::max(1.0, bar.c.tau)) {
      t += 1e-9 * bar.c.tau;
      ++rep.resampled;
    }
    double rmax = bar.r_max_at(t) * (1.0 - 1e-12);
    double rlo = bar.r_lo > 0.0 ? bar.r_lo : kCenterExclusion;
    if (rmax <= rlo) {
      ++rep.resampled;
      continue;
    }
    double r = rlo + (rmax - rlo) * u01(rng);
    double ang = 2.0 * M_PI * u01(rng);
    Vec x{bar.center[0] + r * std::cos(ang), bar.center[1] + r * std::sin(ang)};
    if (!bar.in_region(x, t)) {
      r *= 1.0 - 1e-9;
      x = {bar.center[0] + r * std::cos(ang), bar.center[1] + r * std::sin(ang)};
      ++rep.resampled;
      if (!bar.in_region(x, t)) continue;
    }
    ResidualParts parts = residual_parts(ps, bar, x, t, false);
    track(parts.residual, parts.h_value, x, t);
    ++rep.samples;
  }

  for (int i = 0; i < slice_n; ++i) {
    double rmax = bar.r_max_at(bar.s) * (1.0 - 1e-12);
    double rlo = bar.r_lo > 0.0 ? bar.r_lo : kCenterExclusion;
    double r = rlo + (rmax - rlo) * (i + u01(rng)) / slice_n;
    double ang = 2.0 * M_PI * u01(rng);
    Vec x{bar.center[0] + r * std::cos(ang), bar.center[1] + r * std::sin(ang)};
    ResidualParts parts = residual_parts(ps, bar, x, bar.s, true);
    track(parts.residual, parts.h_value, x, bar.s);
    ++rep.slice_samples;
  }
  return rep;
}

std::function<double(const Vec&, double)> extend_constant(const BarrierSpec& bar,
                                                          int straddle_pairs,
                                                          std::uint64_t rng_seed,
                                                          double tol) {
  if (!bar.constant_barrier) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < straddle_pairs; ++i) {
      double t = bar.t_lo + (bar.t_hi - bar.t_lo) * (i + u01(rng)) / straddle_pairs;
      double rstar = bar.r_max_at(t);
      if (rstar <= bar.r_lo) continue;
      double ang = 2.0 * M_PI * u01(rng);
      // relative shift: the radial derivative is unbounded at the apex for
      // β < 1 profiles, but b r^β stays bounded along ∂R
      double shift = 1e-8 * rstar;
      Vec xin{bar.center[0] + (rstar - shift) * std::cos(ang),
              bar.center[1] + (rstar - shift) * std::sin(ang)};
      Vec xout{bar.center[0] + (rstar + shift) * std::cos(ang),
               bar.center[1] + (rstar + shift) * std::sin(ang)};
      double vin = bar.value(xin, t);
      double vout = bar.value(xout, t);
      if (std::abs(vin - bar.outside_value) > tol || vout != bar.outside_value) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "extend_constant: discontinuity %.3e across the region boundary "
                      "at t=%.6f (construction bug)",
                      std::abs(vin - bar.outside_value), t);
        throw NumericError(buf);
      }
    }
  }
  BarrierSpec copy = bar;
  return [copy](const Vec& x, double t) { return copy.value(x, t); };
}

CompatReport boundary_compatibility(const ProblemSpec& ps, const BarrierSpec& bar,
                                    int samples) {
  CompatReport rep;
  int nb = std::max(16, static_cast<int>(std::sqrt(static_cast<double>(samples))));
  auto visit = [&](const Vec& x, double t) {
    double v = bar.value(x, t);
    double hv = ps.h(x, t);
    double gap = bar.is_bump ? v - hv : hv - v;  // > 0 is a violation
    ++rep.samples;
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_x = x;
      rep.worst_t = t;
    }
    if (gap > 1e-9 * std::max(1.0, std::abs(hv))) {
      ++rep.violations;
      rep.passed = false;
    }
  };
  // bottom slice
  if (ps.domain.kind == Domain::Kind::Box) {
    for (int i = 0; i <= nb; ++i)
      for (int j = 0; j <= nb; ++j)
        visit(Vec{ps.domain.lo[0] + (ps.domain.hi[0] - ps.domain.lo[0]) * i / nb,
                  ps.domain.lo[1] + (ps.domain.hi[1] - ps.domain.lo[1]) * j / nb},
              0.0);
  } else {
    for (int i = 0; i <= nb / 2; ++i) {
      double r = ps.domain.inner +
                 (ps.domain.outer - ps.domain.inner) * i / std::max(1, nb / 2);
      for (int j = 0; j < nb; ++j) {
        double th = 2.0 * M_PI * j / nb;
        visit(Vec{ps.domain.center[0] + r * std::cos(th),
                  ps.domain.center[1] + r * std::sin(th)},
              0.0);
      }
    }
  }
  // lateral boundary
  for (const Vec& x : ps.domain.boundary_points(4 * nb))
    for (int j = 0; j < nb; ++j) visit(x, ps.T * j / static_cast<double>(nb));

  rep.anchor_gap = std::abs(bar.value(bar.anchor, bar.s) - bar.anchor_value);
  if (rep.anchor_gap > 1e-9) rep.passed = false;
  return rep;
}

StructureReport check_structure(const ProblemSpec& ps, const BarrierSpec& bar,
                                int samples, std::uint64_t rng_seed) {
  StructureReport rep;
  rep.anchor_gap = std::abs(bar.value(bar.anchor, bar.s) - bar.anchor_value);
  rep.bracket_low = bar.outside_value;
  rep.bracket_high = bar.outside_value;

  if (!bar.constant_barrier) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    // continuity across ∂R (relative shift, see extend_constant)
    for (int i = 0; i < 256; ++i) {
      double t = bar.t_lo + (bar.t_hi - bar.t_lo) * (i + u01(rng)) / 256.0;
      double rstar = bar.r_max_at(t);
      if (rstar <= bar.r_lo) continue;
      double shift = 1e-8 * rstar;
      double ang = 2.0 * M_PI * u01(rng);
      Vec xin{bar.center[0] + (rstar - shift) * std::cos(ang),
              bar.center[1] + (rstar - shift) * std::sin(ang)};
      rep.continuity_gap =
          std::max(rep.continuity_gap, std::abs(bar.value(xin, t) - bar.outside_value));
    }

    // value bracket and time monotonicity over region samples
    for (int i = 0; i < samples; ++i) {
      double t = bar.t_lo + (bar.t_hi - bar.t_lo) * u01(rng);
      double rmax = bar.r_max_at(t);
      double rlo = bar.r_lo > 0.0 ? bar.r_lo : 0.0;
      if (rmax <= rlo) continue;
      double r = rlo + (rmax - rlo) * u01(rng);
      double ang = 2.0 * M_PI * u01(rng);
      Vec x{bar.center[0] + r * std::cos(ang), bar.center[1] + r * std::sin(ang)};
      double v = bar.value(x, t);
      rep.bracket_low = std::min(rep.bracket_low, v);
      rep.bracket_high = std::max(rep.bracket_high, v);
      if (rmax > bar.r_hi * (1.0 + 1e-9)) rep.region_contained = false;

      // bump decays away from t = s, indent grows
      double dt1 = std::abs(t - bar.s);
      double dt2 = std::min(bar.c.tau, dt1 + u01(rng) * (bar.c.tau - dt1));
      double t2 = bar.s + (t >= bar.s ? dt2 : -dt2);
      if (t2 >= bar.t_lo && t2 <= bar.t_hi && bar.in_region(x, t2)) {
        double v2 = bar.value(x, t2);
        double slack = 1e-12 * std::max(1.0, std::abs(v));
        if (bar.is_bump ? v2 > v + slack : v2 < v - slack) rep.time_monotone = false;
      }
    }

    // exact parameter identities from the stored constants
    double id1 = std::abs(bar.c.ell * bar.c.tau - bar.c.L);
    double q_geo = bar.is_bump ? 1.0 - std::exp(-bar.c.L) : std::exp(bar.c.L) - 1.0;
    double id2;
    if (bar.family == BarrierFamily::SideBumpII ||
        bar.family == BarrierFamily::SideIndentII) {
      id2 = std::abs(bar.c.b * (1.0 - std::pow(2.0, -bar.c.beta)) - q_geo);
    } else {
      id2 = std::abs(bar.c.b * std::pow(bar.c.delta, bar.c.beta) - q_geo);
    }
    rep.identity_gap = std::max(id1 / std::max(1.0, std::abs(bar.c.L)),
                                id2 / std::max(1.0, q_geo));
  }

  if (bar.part == Part::II) {
    double k = ps.k(), gamma = ps.gamma(), beta = bar.c.beta, G = ps.Gamma;
    double a_exp = gamma - k * beta - G * (1.0 - beta);
    rep.part2_exponent_gap = std::abs(a_exp - beta * (G - k) - (gamma - G));
  }

  double lo_ok = ps.theta_inf / 2.0 - 1e-9 * std::max(1.0, ps.theta_inf);
  double hi_ok = 2.0 * ps.M_sup + 1e-9 * std::max(1.0, ps.M_sup);
  rep.passed = rep.anchor_gap <= 1e-9 && rep.continuity_gap <= 1e-6 &&
               rep.bracket_low >= lo_ok && rep.bracket_high <= hi_ok &&
               rep.identity_gap <= 1e-12 && rep.part2_exponent_gap <= 1e-12 &&
               rep.region_contained && rep.time_monotone;
  return rep;
}

BarrierSpec with_scaled_b(BarrierSpec bar, double factor) {
  if (factor <= 0.0) throw InputError("with_scaled_b: factor must be positive");
  bar.c.b *= factor;
  bar.spatial_b *= factor;
  return bar;
}

}  // namespace parabarrier
