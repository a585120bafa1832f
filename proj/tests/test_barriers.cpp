#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "parabarrier/barriers.hpp"
#include "parabarrier/errors.hpp"

using namespace parabarrier;

namespace {

// ∞-Laplacian with f(u) = 3u², Γ = k = 3, gaussian data: Case (i) setup
ProblemSpec inf_problem() {
  ProblemSpec ps;
  ps.op = make_inf_laplacian(2);
  ps.coer = profile(ps.op, -1.0, 2.5, 36, 256, 10);
  ps.nl = Nonlinearity::power(3.0, 2.0);
  ps.Gamma = 3.0;
  ps.chi = ChiSpec::constant(0.1);
  ps.T = 0.5;
  ps.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  ps.h = BoundaryData::gaussian(1.0, 1.0, {0.5, 0.5}, 0.35);
  ps.finalize();
  return ps;
}

// Pucci H⁻ with f(u) = u, Γ = k = 2: Case (ii) setup (λ̄ = 4)
ProblemSpec pucci_problem() {
  ProblemSpec ps;
  ps.op = make_pucci_minus(1.0, 3.0, 1.0, 2);
  ps.coer = profile(ps.op, -1.0, 6.0, 29, 256, 10);
  ps.nl = Nonlinearity::power(1.0, 1.0);
  ps.Gamma = 2.0;
  ps.chi = ChiSpec::sinusoid(0.2, 0.3);
  ps.T = 0.4;
  ps.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  ps.h = BoundaryData::gaussian(1.0, 1.0, {0.5, 0.5}, 0.35);
  ps.finalize();
  return ps;
}

// ramp data: inf h = 1 exactly on the x=0 edge, sup h = 2 on x=1
ProblemSpec ramp_problem() {
  ProblemSpec ps;
  ps.op = make_inf_laplacian(2);
  ps.coer = profile(ps.op, -1.0, 2.5, 36, 256, 10);
  ps.nl = Nonlinearity::power(3.0, 2.0);
  ps.Gamma = 3.0;
  ps.chi = ChiSpec::constant(0.0);
  ps.T = 0.5;
  ps.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  ps.h = BoundaryData::ramp(1.0, {1.0, 0.0});
  ps.finalize();
  return ps;
}

ProblemSpec part2_problem(Operator op, CoercivityProfile coer, double Gamma) {
  ProblemSpec ps;
  ps.op = std::move(op);
  ps.coer = std::move(coer);
  ps.nl.reset();  // f ≡ 1
  ps.Gamma = Gamma;
  ps.chi = ChiSpec::constant(0.15);
  ps.T = 0.4;
  ps.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  ps.h = BoundaryData::gaussian(1.0, 1.0, {0.5, 0.5}, 0.35);
  ps.finalize();
  return ps;
}

// central-difference oracle for the barrier's space and time derivatives
void expect_derivatives_match_fd(const BarrierSpec& bar, const Vec& x, double t) {
  GradHess an = bar.space_derivs(x, t);
  double h = 1e-6 * std::max(1.0, norm(x - bar.center));
  for (int i = 0; i < 2; ++i) {
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (bar.value(xp, t) - bar.value(xm, t)) / (2.0 * h);
    EXPECT_NEAR(an.grad[i], fd, 1e-4 * std::max(1.0, std::abs(fd)));
  }
  double ht = 1e-7 * std::max(1.0, bar.c.tau);
  if (std::abs(t - bar.s) > 2.0 * ht) {
    double fd_t = (bar.value(x, t + ht) - bar.value(x, t - ht)) / (2.0 * ht);
    EXPECT_NEAR(bar.time_deriv(x, t), fd_t,
                1e-4 * std::max(1.0, std::abs(fd_t)));
  }
}

Vec region_point(const BarrierSpec& bar, double t, double frac, double ang) {
  double rmax = bar.r_max_at(t);
  double rlo = bar.r_lo;
  double r = rlo + (rmax - rlo) * frac;
  return {bar.center[0] + r * std::cos(ang), bar.center[1] + r * std::sin(ang)};
}

}  // namespace

TEST(Barriers, InitBumpSolvedConstantsRamp) {
  ProblemSpec ps = ramp_problem();
  ASSERT_NEAR(ps.theta_inf, 1.0, 1e-9);
  ASSERT_NEAR(ps.M_sup, 2.0, 1e-9);
  double eps = 0.2;
  BarrierSpec bar = build_init_bump(ps, {1.0, 0.5}, eps);
  ASSERT_FALSE(bar.constant_barrier);
  // L = log((h(y,0)-2ε)/(ϑ-2ε)) = log(1.6/0.6)
  EXPECT_NEAR(bar.c.L, std::log(1.6 / 0.6), 1e-9);
  // b δ² = 1 - e^{-L} and ℓτ = L, to 1e-12
  EXPECT_NEAR(bar.c.b * bar.c.delta * bar.c.delta, 1.0 - std::exp(-bar.c.L), 1e-12);
  EXPECT_NEAR(bar.c.ell * bar.c.tau, bar.c.L, 1e-12 * std::max(1.0, bar.c.L));
  // the Part I ℓ formula, recomputed from the stored constants
  double mu0 = mu_exact(ps.op, 0.0);
  double expect_ell = 3.0 * std::pow(8.0 * bar.c.b, 3.0) *
                      std::pow(bar.c.delta, 2.0) * mu0 * std::pow(2.0, 5.0) /
                      (ps.omega * std::pow(1.0, 3.0));
  EXPECT_NEAR(bar.c.ell, expect_ell, 1e-9 * expect_ell);
  EXPECT_NEAR(bar.value(bar.anchor, 0.0), ps.h({1.0, 0.5}, 0.0) - 2.0 * eps, 1e-9);
}

TEST(Barriers, InitIndentSolvedConstantsRamp) {
  ProblemSpec ps = ramp_problem();
  double eps = 0.2;
  BarrierSpec bar = build_init_indent(ps, {0.0, 0.5}, eps);
  ASSERT_FALSE(bar.constant_barrier);
  // L = log((M+2ε)/(h(y,0)+2ε)) = log(2.4/1.4)
  EXPECT_NEAR(bar.c.L, std::log(2.4 / 1.4), 1e-9);
  EXPECT_NEAR(bar.c.b * bar.c.delta * bar.c.delta, std::exp(bar.c.L) - 1.0, 1e-12);
  EXPECT_NEAR(bar.value(bar.anchor, 0.0), 1.0 + 2.0 * eps, 1e-9);
}

TEST(Barriers, LogThreeArithmetic) {
  // ϑ=1, M=2, h(y,0)=2, ε=1/4: L = log 3 and b = (2/3)/δ²
  double theta = 1.0, h = 2.0, eps = 0.25;
  double L = std::log((h - 2.0 * eps) / (theta - 2.0 * eps));
  EXPECT_NEAR(L, std::log(3.0), 1e-15);
  double delta = 0.05;
  double b = (1.0 - std::exp(-L)) / (delta * delta);
  EXPECT_NEAR(b, (2.0 / 3.0) / (delta * delta), 1e-12);
  // indent variant: log((M+2ε)/(h+2ε)) = log(2.5/1.5)
  EXPECT_NEAR(std::log((2.0 + 2.0 * eps) / (1.0 + 2.0 * eps)), std::log(5.0 / 3.0),
              1e-14);
}

TEST(Barriers, ConstantBarrierAtDataExtremes) {
  ProblemSpec ps = ramp_problem();
  BarrierSpec bump = build_init_bump(ps, {0.0, 0.5}, 0.2);  // h(y,0) = ϑ
  EXPECT_TRUE(bump.constant_barrier);
  EXPECT_DOUBLE_EQ(bump.value({0.3, 0.3}, 0.1), ps.theta_inf);
  ResidualReport rr = verify_inequality(ps, bump, 1000, 7);
  EXPECT_TRUE(rr.passed);
  EXPECT_DOUBLE_EQ(rr.min_residual, 0.0);

  BarrierSpec indent = build_init_indent(ps, {1.0, 0.5}, 0.2);  // h(y,0) = M
  EXPECT_TRUE(indent.constant_barrier);
  EXPECT_DOUBLE_EQ(indent.value({0.3, 0.3}, 0.1), ps.M_sup);
}

TEST(Barriers, InitBumpResidualInfLaplacian) {
  ProblemSpec ps = inf_problem();
  BarrierSpec bar = build_init_bump(ps, {0.5, 0.5}, ps.default_eps());
  ASSERT_FALSE(bar.constant_barrier);
  ResidualReport rr = verify_inequality(ps, bar, 10000, 42);
  EXPECT_TRUE(rr.passed) << "violations " << rr.violations << " worst margin "
                         << rr.worst_margin;
  EXPECT_GE(rr.min_residual, -1e-8 * std::max(1.0, std::abs(rr.min_residual)));
}

TEST(Barriers, InitIndentResidualPucci) {
  ProblemSpec ps = pucci_problem();
  // anchor away from the peak so h(y,0) < M strictly
  BarrierSpec bar = build_init_indent(ps, {0.3, 0.4}, ps.default_eps());
  ASSERT_FALSE(bar.constant_barrier);
  ResidualReport rr = verify_inequality(ps, bar, 10000, 42);
  EXPECT_TRUE(rr.passed) << "violations " << rr.violations;
}

TEST(Barriers, DerivativesMatchFiniteDifferences) {
  ProblemSpec ps = inf_problem();
  BarrierSpec bump = build_init_bump(ps, {0.5, 0.5}, ps.default_eps());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int rep = 0; rep < 25; ++rep) {
    double t = bump.t_lo + (bump.t_hi - bump.t_lo) * u(rng);
    Vec x = region_point(bump, t, 0.3 + 0.5 * u(rng), 2.0 * M_PI * u(rng));
    if (!bump.in_region(x, t)) continue;
    expect_derivatives_match_fd(bump, x, t);
  }
}

TEST(Barriers, SideCase1ResidualInfLaplacian) {
  ProblemSpec ps = inf_problem();
  ASSERT_EQ(ps.coer.case_tag, CaseTag::CaseI);
  Vec y{0.0, 0.5};
  double s = 0.2;
  for (BarrierKind kind : {BarrierKind::Bump, BarrierKind::Indent}) {
    BarrierSpec bar = build_side_case1(ps, kind, y, s, ps.default_eps(), 1.5);
    ASSERT_FALSE(bar.constant_barrier);
    EXPECT_NEAR(bar.c.beta, 0.5, 1e-12);        // β = 2 - λ̄
    EXPECT_NEAR(bar.mu_used, -0.5, 1e-9);       // μ(1.5) = 1 - 1.5
    ResidualReport rr = verify_inequality(ps, bar, 10000, 42);
    EXPECT_TRUE(rr.passed)
        << to_string(bar.family) << " violations " << rr.violations << " margin "
        << rr.worst_margin;
    // b δ^β identity
    double q_geo = bar.is_bump ? 1.0 - std::exp(-bar.c.L) : std::exp(bar.c.L) - 1.0;
    EXPECT_NEAR(bar.c.b * std::pow(bar.c.delta, bar.c.beta), q_geo, 1e-12);
    // anchor two-sided ε-closeness
    double expect_anchor =
        ps.h(y, s) + (bar.is_bump ? -2.0 : 2.0) * bar.epsilon;
    EXPECT_NEAR(bar.value(y, s), expect_anchor, 1e-9);
  }
}

TEST(Barriers, SideCase1RequiresCertificate) {
  ProblemSpec ps = pucci_problem();  // Case (ii) operator
  EXPECT_THROW(
      build_side_case1(ps, BarrierKind::Bump, {0.0, 0.5}, 0.2, ps.default_eps()),
      InapplicableError);
}

TEST(Barriers, SideCase2ResidualPucci) {
  ProblemSpec ps = pucci_problem();
  ASSERT_EQ(ps.coer.case_tag, CaseTag::CaseII);
  ASSERT_NEAR(ps.coer.lambda_bar, 4.0, 1e-3);
  Vec y{0.0, 0.5};
  double s = 0.2;
  for (BarrierKind kind : {BarrierKind::Bump, BarrierKind::Indent}) {
    BarrierSpec bar = build_side_case2(ps, kind, y, s, ps.default_eps());
    ASSERT_FALSE(bar.constant_barrier);
    EXPECT_NEAR(bar.c.beta, 2.5, 2e-3);       // λ̄ - 2 + 0.5 margin
    EXPECT_NEAR(bar.lambda_used, 4.5, 2e-3);  // λ = β + 2
    EXPECT_NEAR(bar.mu_used, -0.5, 2e-3);     // μ(4.5) = 4 - 4.5
    ResidualReport rr = verify_inequality(ps, bar, 10000, 42);
    EXPECT_TRUE(rr.passed)
        << to_string(bar.family) << " violations " << rr.violations << " margin "
        << rr.worst_margin;
    // shell geometry: exterior ball tangent at the anchor
    EXPECT_NEAR(norm(bar.anchor - bar.center), bar.c.rho, 1e-12);
    EXPECT_NEAR(bar.r_hi, 2.0 * bar.c.rho, 1e-12);
    // Ĉ (1 - 2^{-β}) equals the geometric factor
    double q_geo = bar.is_bump ? 1.0 - std::exp(-bar.c.L) : std::exp(bar.c.L) - 1.0;
    EXPECT_NEAR(bar.c.b * (1.0 - std::pow(2.0, -bar.c.beta)), q_geo, 1e-12);
  }
}

TEST(Barriers, SideCase2OnAnnulusInnerBoundary) {
  ProblemSpec ps = pucci_problem();
  ps.domain = Domain::annulus({0.0, 0.0}, 0.5, 1.5);
  ps.h = BoundaryData::gaussian(1.0, 1.0, {1.0, 0.0}, 0.6);
  ps.finalize();
  Vec y{-0.5, 0.0};  // inner circle: the hole is the exterior ball
  BarrierSpec bar = build_side_case2(ps, BarrierKind::Bump, y, 0.2, ps.default_eps());
  if (!bar.constant_barrier) {
    ResidualReport rr = verify_inequality(ps, bar, 6000, 9);
    EXPECT_TRUE(rr.passed) << rr.violations;
    // ball center between the hole center and y
    EXPECT_LT(norm(bar.center), 0.5);
  }
}

TEST(Barriers, PartTwoResidualsInfLaplacian) {
  Operator op = make_inf_laplacian(2);
  CoercivityProfile coer = profile(op, -1.0, 2.5, 36, 256, 10);
  for (double Gamma : {1.0, 3.5}) {  // γ = 4: both below γ
    ProblemSpec ps = part2_problem(op, coer, Gamma);
    for (auto builder : {build_init_bump, build_init_indent}) {
      BarrierSpec bar = builder(ps, {0.3, 0.4}, ps.default_eps(), 0.0);
      ResidualReport rr = verify_inequality(ps, bar, 8000, 5);
      EXPECT_TRUE(rr.passed) << to_string(bar.family) << " Gamma=" << Gamma;
      EXPECT_EQ(bar.part, Part::II);
    }
    for (BarrierKind kind : {BarrierKind::Bump, BarrierKind::Indent}) {
      BarrierSpec bar = build_side_case1(ps, kind, {0.0, 0.5}, 0.2, ps.default_eps(), 1.5);
      ResidualReport rr = verify_inequality(ps, bar, 8000, 5);
      EXPECT_TRUE(rr.passed) << to_string(bar.family) << " Gamma=" << Gamma;
      // Part II exponent bookkeeping holds exactly
      StructureReport sr = check_structure(ps, bar, 1000, 11);
      EXPECT_LE(sr.part2_exponent_gap, 1e-12);
    }
  }
}

TEST(Barriers, PartTwoResidualsPucci) {
  Operator op = make_pucci_minus(1.0, 3.0, 1.0, 2);
  CoercivityProfile coer = profile(op, -1.0, 6.0, 29, 256, 10);
  for (double Gamma : {1.0, 2.5}) {  // γ = 3
    ProblemSpec ps = part2_problem(op, coer, Gamma);
    for (BarrierKind kind : {BarrierKind::Bump, BarrierKind::Indent}) {
      BarrierSpec bar = build_side_case2(ps, kind, {0.0, 0.5}, 0.2, ps.default_eps());
      ResidualReport rr = verify_inequality(ps, bar, 8000, 5);
      EXPECT_TRUE(rr.passed) << to_string(bar.family) << " Gamma=" << Gamma
                             << " margin " << rr.worst_margin;
    }
  }
}

TEST(Barriers, HeatEquationKEqualsOne) {
  // Δu - u_t with Γ = 1 < γ = 2: the k = 1 end of the f ≡ 1 range
  Operator op = make_p_laplacian_variant(0.0, 0.0, 2);
  CoercivityProfile coer = profile(op, -1.0, 4.0, 21, 128, 10);
  ProblemSpec ps = part2_problem(op, coer, 1.0);
  BarrierSpec bar = build_init_bump(ps, {0.3, 0.4}, ps.default_eps());
  ResidualReport rr = verify_inequality(ps, bar, 5000, 3);
  EXPECT_TRUE(rr.passed) << rr.violations;
}

TEST(Barriers, CorruptedBarrierNegativeControl) {
  ProblemSpec ps = inf_problem();
  BarrierSpec bar = build_side_case1(ps, BarrierKind::Bump, {0.0, 0.5}, 0.2,
                                     ps.default_eps(), 1.5);
  BarrierSpec corrupted = with_scaled_b(bar, 0.01);
  ResidualReport rr = verify_inequality(ps, corrupted, 10000, 42);
  EXPECT_FALSE(rr.passed);
  EXPECT_GT(rr.violations, 0);
  EXPECT_LT(rr.min_residual, 0.0);
}

TEST(Barriers, ExtendConstantContinuity) {
  ProblemSpec ps = inf_problem();
  for (const BarrierSpec& bar :
       {build_init_bump(ps, {0.5, 0.5}, ps.default_eps()),
        build_side_case1(ps, BarrierKind::Indent, {0.0, 0.5}, 0.2, ps.default_eps(),
                         1.5)}) {
    auto total = extend_constant(bar, 1000, 7);
    // outside the region the extension is the outside constant
    EXPECT_DOUBLE_EQ(total({0.9, 0.9}, ps.T * 0.9), bar.outside_value);
  }
}

TEST(Barriers, BoundaryCompatibility) {
  ProblemSpec ps = inf_problem();
  BarrierSpec bump = build_init_bump(ps, {0.5, 0.5}, ps.default_eps());
  CompatReport cb = boundary_compatibility(ps, bump, 4000);
  EXPECT_TRUE(cb.passed) << "worst gap " << cb.worst_gap;
  EXPECT_NEAR(cb.anchor_gap, 0.0, 1e-9);

  BarrierSpec indent = build_side_case1(ps, BarrierKind::Indent, {0.0, 0.5}, 0.2,
                                        ps.default_eps(), 1.5);
  CompatReport ci = boundary_compatibility(ps, indent, 4000);
  EXPECT_TRUE(ci.passed) << "worst gap " << ci.worst_gap;
}

TEST(Barriers, StructureChecksAllFamilies) {
  ProblemSpec psi = inf_problem();
  ProblemSpec psp = pucci_problem();
  std::vector<BarrierSpec> bars = {
      build_init_bump(psi, {0.5, 0.5}, psi.default_eps()),
      build_init_indent(psi, {0.3, 0.4}, psi.default_eps()),
      build_side_case1(psi, BarrierKind::Bump, {0.0, 0.5}, 0.2, psi.default_eps(), 1.5),
      build_side_case1(psi, BarrierKind::Indent, {0.0, 0.5}, 0.2, psi.default_eps(), 1.5),
      build_side_case2(psp, BarrierKind::Bump, {0.0, 0.5}, 0.2, psp.default_eps()),
      build_side_case2(psp, BarrierKind::Indent, {0.0, 0.5}, 0.2, psp.default_eps()),
  };
  for (size_t i = 0; i < bars.size(); ++i) {
    const ProblemSpec& ps = i < 4 ? psi : psp;
    StructureReport sr = check_structure(ps, bars[i], 2000, 13);
    EXPECT_TRUE(sr.passed) << to_string(bars[i].family) << ": anchor " << sr.anchor_gap
                           << " continuity " << sr.continuity_gap << " identity "
                           << sr.identity_gap << " bracket [" << sr.bracket_low << ","
                           << sr.bracket_high << "]";
    // global bracket ϑ/2 ≤ value ≤ 2M
    EXPECT_GE(sr.bracket_low, ps.theta_inf / 2.0 - 1e-9);
    EXPECT_LE(sr.bracket_high, 2.0 * ps.M_sup + 1e-9);
  }
}

TEST(Barriers, RegionGeometry) {
  ProblemSpec ps = inf_problem();
  BarrierSpec bar = build_init_bump(ps, {0.5, 0.5}, ps.default_eps());
  // base radius δ at t = 0, tapering to the apex at t = τ
  EXPECT_NEAR(bar.r_max_at(0.0), bar.c.delta, 1e-12 * std::max(1.0, bar.c.delta));
  EXPECT_LT(bar.r_max_at(0.75 * bar.c.tau), bar.r_max_at(0.25 * bar.c.tau));
  EXPECT_NEAR(bar.r_max_at(bar.c.tau), 0.0, 1e-9 * bar.c.delta);

  BarrierSpec s2 = build_side_case2(pucci_problem(), BarrierKind::Bump, {0.0, 0.5}, 0.2,
                                    0.05);
  // full shell at t = s, collapsing to r = ρ at |t-s| = τ
  EXPECT_NEAR(s2.r_max_at(s2.s), 2.0 * s2.c.rho, 1e-12);
  EXPECT_NEAR(s2.r_max_at(s2.s + s2.c.tau), s2.c.rho, 1e-6 * s2.c.rho);
}

TEST(Barriers, EpsilonValidation) {
  ProblemSpec ps = inf_problem();
  EXPECT_THROW(build_init_bump(ps, {0.5, 0.5}, ps.theta_inf), InputError);
  EXPECT_THROW(build_init_bump(ps, {0.5, 0.5}, 0.0), InputError);
}

TEST(Barriers, PartOneGateRejectsGammaMismatch) {
  ProblemSpec ps = inf_problem();
  ps.Gamma = 2.0;  // Part I requires Γ = k = 3
  EXPECT_THROW(build_init_bump(ps, {0.5, 0.5}, 0.1), InapplicableError);
}
