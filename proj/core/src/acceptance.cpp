#include "parabarrier/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "parabarrier/barriers.hpp"
#include "parabarrier/solver.hpp"

namespace parabarrier::acceptance {

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::ostream&)> run;
};

ProblemSpec make_problem(Operator op, CoercivityProfile coer,
                         std::optional<Nonlinearity> nl, double Gamma, ChiSpec chi,
                         double T, BoundaryData h) {
  ProblemSpec ps;
  ps.op = std::move(op);
  ps.coer = std::move(coer);
  ps.nl = std::move(nl);
  ps.Gamma = Gamma;
  ps.chi = chi;
  ps.T = T;
  ps.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  ps.h = std::move(h);
  ps.finalize();
  return ps;
}

BoundaryData default_gaussian() {
  return BoundaryData::gaussian(1.0, 1.0, {0.5, 0.5}, 0.35);
}

// ---- criterion 1: Conditions A and B on the zoo and its duals -------------
bool criterion_conditions(std::ostream& out) {
  bool ok = true;
  for (int dim : {2, 3}) {
    for (const Operator& base : zoo(dim)) {
      for (const Operator& op : {base, dual(base)}) {
        auto hom = check_homogeneity(op, 1000, 1000 + dim, 1e-9);
        auto mon = check_monotonicity(op, 1000, 2000 + dim, 1e-9);
        auto zer = check_zero_matrix(op, 200, 3000 + dim, 0.0);
        if (!hom.passed || !mon.passed || !zer.passed) {
          ok = false;
          out << "    " << op.name << " dim " << dim << ": homogeneity worst "
              << hom.worst << ", monotonicity worst " << mon.worst
              << ", zero-matrix worst " << zer.worst << "\n";
        }
      }
    }
  }
  return ok;
}

// ---- criterion 2: closed-form coercivity profiles --------------------------
bool criterion_closed_forms(std::ostream& out) {
  bool ok = true;
  auto expect = [&](const Operator& op, const CoercivityProfile& prof) {
    CrosscheckReport rep = crosscheck_closed_form(prof, op, 1e-6);
    if (!rep.passed) {
      ok = false;
      for (const auto& v : rep.violations)
        out << "    " << op.name << " " << v.side << " at lambda " << v.lambda
            << ": value " << v.value << " vs bound " << v.bound << "\n";
    }
  };
  {
    Operator op = make_inf_laplacian(2);
    expect(op, profile(op, -4.0, 4.0, 33, 512, 20));
  }
  {
    Operator op = make_p_laplacian_variant(2.0, 2.0, 2);
    expect(op, profile(op, -4.0, 4.0, 33, 512, 20));
  }
  {
    Operator op = make_pucci_plus(1.0, 2.0, 0.0, 2);
    expect(op, profile(op, -4.0, 4.0, 33, 512, 20));
  }
  {
    Operator op = make_pucci_minus(1.0, 3.0, 1.0, 2);
    expect(op, profile(op, -4.0, 4.0, 33, 512, 20));
  }
  {
    Operator op = make_pseudo_p(3.0, 0.0, 2);
    expect(op, profile(op, 0.0, 4.0, 33, 4096, 50));
  }
  return ok;
}

// ---- criterion 3: Case (i)/(ii) classification ------------------------------
bool criterion_case_classification(std::ostream& out) {
  bool ok = true;
  Operator inf = make_inf_laplacian(2);
  CoercivityProfile pi = profile(inf, -4.0, 4.0, 33, 512, 20);
  if (pi.case_tag != CaseTag::CaseI) {
    ok = false;
    out << "    inf_laplacian classified " << to_string(pi.case_tag) << "\n";
  }
  Operator pm = make_pucci_minus(1.0, 3.0, 1.0, 2);
  CoercivityProfile pp = profile(pm, -1.0, 6.0, 29, 512, 20);
  if (pp.case_tag != CaseTag::CaseII || std::abs(pp.lambda_bar - 4.0) > 1e-3) {
    ok = false;
    out << "    pucci_minus(1,3,1) classified " << to_string(pp.case_tag)
        << " lambda_bar " << pp.lambda_bar << "\n";
  }
  return ok;
}

// ---- criterion 4: radial reduction identity and envelope ------------------
bool criterion_radial(std::ostream& out) {
  bool ok = true;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto ops = zoo(2);
  std::vector<CoercivityProfile> profs;
  for (const auto& op : ops) profs.push_back(profile(op, -1.3, 2.0, 34, 512, 25));
  int bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    size_t oi = rep % ops.size();
    double a = u(rng);
    double b = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * u(rng));
    double beta = 0.2 + 2.8 * u(rng);
    double r = 0.1 + 9.9 * u(rng);
    RadialProfile p = RadialProfile::power(a, b, beta, {0.0, 0.0});
    double ang = 2.0 * M_PI * u(rng);
    Vec e{std::cos(ang), std::sin(ang)};
    double via = reduce(ops[oi], p, r, e);
    GradHess gh = radial_gradient_hessian(p, r * e);
    double direct = evaluate(ops[oi], gh.grad, gh.hess);
    TwoSidedBounds bd = radial_bounds(ops[oi], profs[oi], b, beta, r);
    double slack = 1e-8 * (1.0 + std::abs(direct));
    if (std::abs(via - direct) > slack || via < bd.lower - slack ||
        via > bd.upper + slack)
      ++bad;
  }
  if (bad > 0) {
    ok = false;
    out << "    " << bad << "/1000 radial samples failed the identity or envelope\n";
  }
  return ok;
}

// ---- criterion 5: the phi ODE against closed forms -------------------------
bool criterion_phi(std::ostream& out) {
  bool ok = true;
  {
    PhiSolution sol = solve_phi(Nonlinearity::trudinger(3.0), 2.0, 1.0, 0.0, 1.0, 1000);
    double err = std::abs(sol.phi_grid.back() - std::exp(1.0));
    if (err > 1e-8) {
      ok = false;
      out << "    exp case error " << err << "\n";
    }
  }
  {
    PhiSolution sol = solve_phi(Nonlinearity::power(1.0, 1.0), 3.0, 1.0, 0.0, 1.0, 1000);
    double err = std::abs(sol.phi_grid.back() - 2.25);
    if (err > 1e-8) {
      ok = false;
      out << "    power case error " << err << "\n";
    }
  }
  {
    std::vector<double> errs;
    for (int steps : {8, 16, 32, 64}) {
      PhiSolution sol = solve_phi(Nonlinearity::trudinger(3.0), 2.0, 1.0, 0.0, 1.0, steps);
      errs.push_back(std::abs(sol.phi_grid.back() - std::exp(1.0)));
    }
    for (size_t i = 0; i + 1 < errs.size(); ++i) {
      double order = std::log2(errs[i] / errs[i + 1]);
      if (std::abs(order - 4.0) > 0.3) {
        ok = false;
        out << "    observed order " << order << " at refinement " << i << "\n";
      }
    }
  }
  return ok;
}

// ---- criteria 6 and 7: barrier residuals and structure ---------------------
struct BarrierCase {
  std::string label;
  ProblemSpec ps;
  BarrierSpec bar;
};

std::vector<BarrierCase> build_barrier_matrix() {
  std::vector<BarrierCase> cases;
  Operator inf = make_inf_laplacian(2);
  Operator pucci = make_pucci_minus(1.0, 3.0, 1.0, 2);
  CoercivityProfile coer_inf = profile(inf, -1.0, 2.5, 36, 512, 20);
  CoercivityProfile coer_pucci = profile(pucci, -1.0, 6.0, 29, 512, 20);

  auto add_case1_families = [&](ProblemSpec ps, const std::string& tag) {
    double eps = ps.default_eps();
    cases.push_back({tag + "/init_bump", ps, build_init_bump(ps, {0.3, 0.4}, eps)});
    cases.push_back({tag + "/init_indent", ps, build_init_indent(ps, {0.3, 0.4}, eps)});
    cases.push_back({tag + "/side_bump_case1", ps,
                     build_side_case1(ps, BarrierKind::Bump, {0.0, 0.5}, 0.2, eps, 1.5)});
    cases.push_back(
        {tag + "/side_indent_case1", ps,
         build_side_case1(ps, BarrierKind::Indent, {0.0, 0.5}, 0.2, eps, 1.5)});
  };
  auto add_case2_families = [&](ProblemSpec ps, const std::string& tag) {
    double eps = ps.default_eps();
    cases.push_back({tag + "/init_bump", ps, build_init_bump(ps, {0.3, 0.4}, eps)});
    cases.push_back({tag + "/init_indent", ps, build_init_indent(ps, {0.3, 0.4}, eps)});
    cases.push_back({tag + "/side_bump_case2", ps,
                     build_side_case2(ps, BarrierKind::Bump, {0.0, 0.5}, 0.2, eps)});
    cases.push_back({tag + "/side_indent_case2", ps,
                     build_side_case2(ps, BarrierKind::Indent, {0.0, 0.5}, 0.2, eps)});
  };

  // doubly nonlinear Case (i): ∞-Laplacian with f = 3u²
  add_case1_families(make_problem(inf, coer_inf, Nonlinearity::power(3.0, 2.0), 3.0,
                                  ChiSpec::constant(0.1), 0.5, default_gaussian()),
                     "inf+3u2");
  // doubly nonlinear Case (ii): Pucci H⁻ with f = u
  add_case2_families(make_problem(pucci, coer_pucci, Nonlinearity::power(1.0, 1.0), 2.0,
                                  ChiSpec::sinusoid(0.2, 0.3), 0.4, default_gaussian()),
                     "pucci+u");
  // f == 1 with Γ in {1, γ - 1/2} on both operators
  for (double Gamma : {1.0, 3.5}) {
    std::ostringstream tag;
    tag << "inf+unit G" << Gamma;
    add_case1_families(make_problem(inf, coer_inf, std::nullopt, Gamma,
                                    ChiSpec::constant(0.15), 0.4, default_gaussian()),
                       tag.str());
  }
  for (double Gamma : {1.0, 2.5}) {
    std::ostringstream tag;
    tag << "pucci+unit G" << Gamma;
    add_case2_families(make_problem(pucci, coer_pucci, std::nullopt, Gamma,
                                    ChiSpec::constant(0.15), 0.4, default_gaussian()),
                       tag.str());
  }
  return cases;
}

bool criterion_barrier_residuals(const std::vector<BarrierCase>& cases,
                                 std::ostream& out) {
  bool ok = true;
  for (const auto& c : cases) {
    ResidualReport rr = verify_inequality(c.ps, c.bar, 10000, 616, 1e-8);
    if (!rr.passed) {
      ok = false;
      out << "    " << c.label << ": " << rr.violations << " violations, worst margin "
          << rr.worst_margin << "\n";
    }
  }
  // negative control: cripple the side bump's spatial coefficient
  const BarrierCase* side = nullptr;
  for (const auto& c : cases)
    if (c.bar.family == BarrierFamily::SideBumpI && !c.bar.constant_barrier) side = &c;
  if (side != nullptr) {
    ResidualReport rr =
        verify_inequality(side->ps, with_scaled_b(side->bar, 0.01), 10000, 616, 1e-8);
    if (rr.passed || rr.violations == 0) {
      ok = false;
      out << "    corrupted barrier was not flagged\n";
    }
  } else {
    ok = false;
    out << "    no side bump available for the negative control\n";
  }
  return ok;
}

bool criterion_barrier_structure(const std::vector<BarrierCase>& cases,
                                 std::ostream& out) {
  bool ok = true;
  for (const auto& c : cases) {
    StructureReport sr = check_structure(c.ps, c.bar, 2000, 77);
    CompatReport cr = boundary_compatibility(c.ps, c.bar, 4000);
    if (!sr.passed || !cr.passed) {
      ok = false;
      out << "    " << c.label << ": anchor " << sr.anchor_gap << " continuity "
          << sr.continuity_gap << " identity " << sr.identity_gap << " bracket ["
          << sr.bracket_low << ", " << sr.bracket_high << "] compat worst "
          << cr.worst_gap << "\n";
    }
  }
  return ok;
}

// ---- criterion 8: discrete comparison / max principle / quotient -----------
struct SchemeSetup {
  SchemeKey key;
  Operator op;
  std::optional<Nonlinearity> nl;
  double Gamma;
};

BoundaryData random_data(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double which = u(rng);
  if (which < 0.4)
    return BoundaryData::gaussian(1.0 + 0.3 * u(rng), 0.4 + 0.6 * u(rng),
                                  {0.3 + 0.4 * u(rng), 0.3 + 0.4 * u(rng)},
                                  0.3 + 0.2 * u(rng));
  if (which < 0.7)
    return BoundaryData::cos_product(1.6 + 0.4 * u(rng), 0.2 + 0.2 * u(rng), 1.0, 1.0);
  return BoundaryData::ramp(1.0 + 0.2 * u(rng), {0.3 + 0.4 * u(rng), 0.2 * u(rng)});
}

bool criterion_grid_principles(std::ostream& out) {
  bool ok = true;
  std::vector<SchemeSetup> setups = {
      {SchemeKey::Inf, make_inf_laplacian(2), Nonlinearity::power(3.0, 2.0), 3.0},
      {SchemeKey::PLap, make_p_laplacian_variant(1.0, 1.0, 2),
       Nonlinearity::power(1.0, 1.0), 2.0},
      {SchemeKey::Pucci, make_pucci_minus(1.0, 3.0, 1.0, 2),
       Nonlinearity::power(1.0, 1.0), 2.0},
  };
  GridGeometry geom = GridGeometry::box(64, 64, {0.0, 0.0}, {1.0, 1.0});
  const double T = 0.0015;
  for (const auto& setup : setups) {
    std::mt19937_64 rng(808 + static_cast<int>(setup.key));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int pair = 0; pair < 20; ++pair) {
      ProblemSpec a;
      a.op = setup.op;
      a.nl = setup.nl;
      a.Gamma = setup.Gamma;
      a.chi = ChiSpec::constant(0.05);
      a.T = T;
      a.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
      a.h = random_data(rng);
      a.finalize();
      ProblemSpec b = a;
      auto base = a.h;
      if (pair % 2 == 0) {
        double shift = 0.05 + 0.25 * u(rng);
        b.h.h = [base, shift](const Vec& x, double t) { return base(x, t) + shift; };
      } else {
        double amp = 0.05 + 0.15 * u(rng);
        Vec c{0.2 + 0.6 * u(rng), 0.2 + 0.6 * u(rng)};
        b.h.h = [base, amp, c](const Vec& x, double t) {
          double r2 = (x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1]);
          return base(x, t) + amp * std::exp(-r2 / 0.09);
        };
      }
      b.finalize();
      auto [sub, sup] = solve_pair(a, b, geom, setup.key, T);
      GridCheckReport cmp = check_comparison(sub, sup);
      GridCheckReport mp1 = check_max_principle(sub);
      GridCheckReport mp2 = check_max_principle(sup);
      if (!cmp.passed || !mp1.passed || !mp2.passed) {
        ok = false;
        out << "    " << to_string(setup.key) << " pair " << pair
            << ": comparison worst " << cmp.worst << " (tol " << cmp.tol
            << "), max principle worst " << std::max(mp1.worst, mp2.worst) << "\n";
      }
    }
  }
  // quotient comparison for the f(u) = u^{k-1} family
  {
    ProblemSpec a;
    a.op = make_p_laplacian_variant(1.0, 1.0, 2);
    a.nl = Nonlinearity::power(1.0, 1.0);
    a.Gamma = 2.0;
    a.chi = ChiSpec::constant(0.05);
    a.T = T;
    a.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
    a.h = default_gaussian();
    a.finalize();
    ProblemSpec b = a;
    auto base = a.h;
    b.h.h = [base](const Vec& x, double t) { return 1.3 * base(x, t); };
    b.finalize();
    auto [v, uu] = solve_pair(a, b, geom, SchemeKey::PLap, T);
    GridCheckReport q = check_quotient(uu, v);
    if (!q.passed) {
      ok = false;
      out << "    quotient comparison worst " << q.worst << " (tol " << q.tol << ")\n";
    }
  }
  return ok;
}

// ---- criterion 9: barrier sandwich on the grid ------------------------------
bool criterion_sandwich(std::ostream& out) {
  Operator inf = make_inf_laplacian(2);
  ProblemSpec ps = make_problem(inf, profile(inf, -1.0, 2.5, 36, 512, 20),
                                Nonlinearity::power(3.0, 2.0), 3.0,
                                ChiSpec::constant(0.1), 0.002, default_gaussian());
  double eps = ps.default_eps();
  std::vector<BarrierSpec> bumps, indents;
  // 8 interior anchors at t = 0 and 8 lateral anchors at s = T/2
  const double pos[8][2] = {{0.3, 0.3}, {0.7, 0.3}, {0.3, 0.7}, {0.7, 0.7},
                            {0.42, 0.58}, {0.58, 0.42}, {0.35, 0.5}, {0.5, 0.35}};
  for (const auto& p : pos) {
    bumps.push_back(build_init_bump(ps, {p[0], p[1]}, eps));
    indents.push_back(build_init_indent(ps, {p[0], p[1]}, eps));
  }
  for (int i = 0; i < 8; ++i) {
    Vec y = ps.domain.boundary_point((i + 0.5) / 8.0);
    double s = 0.5 * ps.T;
    bumps.push_back(build_side_case1(ps, BarrierKind::Bump, y, s, eps, 1.5));
    indents.push_back(build_side_case1(ps, BarrierKind::Indent, y, s, eps, 1.5));
  }
  GridGeometry geom = GridGeometry::box(48, 48, {0.0, 0.0}, {1.0, 1.0});
  GridField field = solve(ps, make_initial_field(ps, geom), SchemeKey::Inf, ps.T);
  SandwichReport rep = check_sandwich(ps, field, bumps, indents);
  bool ok = rep.check.passed;
  if (!ok)
    out << "    sandwich worst " << rep.check.worst << " tol " << rep.check.tol << "\n";
  double tol = grid_tolerance(field);
  for (size_t i = 0; i < rep.anchor_gaps.size(); ++i) {
    if (rep.anchor_gaps[i] > 2.0 * eps + 2.0 * tol) {
      ok = false;
      out << "    anchor gap " << rep.anchor_gaps[i] << " at barrier " << i << "\n";
    }
  }
  return ok;
}

// ---- criterion 10: change-of-variables equivalence on the grid -------------
bool criterion_transform(std::ostream& out) {
  ProblemSpec direct;
  direct.op = make_p_laplacian_variant(1.0, 1.0, 2);
  direct.nl = Nonlinearity::power(1.0, 1.0);  // f(u) = u = u^{k-1}, k = 2
  direct.Gamma = 2.0;
  direct.chi = ChiSpec::constant(0.05);
  direct.T = 0.01;
  direct.domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  direct.h = BoundaryData::gaussian(1.0, 0.6, {0.5, 0.5}, 0.4);
  direct.finalize();

  PhiSolution phi = solve_phi(*direct.nl, direct.k(), 0.4, 0.0, 4.0, 2000);

  ProblemSpec transformed = direct;
  transformed.nl.reset();
  auto baseh = direct.h;
  transformed.h.h = [baseh, &phi](const Vec& x, double t) {
    return phi.phi_inverse(baseh(x, t));
  };
  transformed.finalize();

  GridGeometry geom = GridGeometry::box(32, 32, {0.0, 0.0}, {1.0, 1.0});
  GridField fu =
      solve(direct, make_initial_field(direct, geom), SchemeKey::PLap, direct.T);
  StepOptions opt;
  opt.aug_coef = [&phi](double v) { return phi.phipp_over_phip(v); };
  GridField fv = solve(transformed, make_initial_field(transformed, geom),
                       SchemeKey::PLap, transformed.T, opt);
  GridField mapped = transform_field(TransformDirection::ToU, fv, phi);

  double worst = 0.0;
  const auto& a = fu.levels.back();
  const auto& b = mapped.levels.back();
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  double tol = grid_tolerance(fu);
  if (worst > tol) {
    out << "    transform mismatch " << worst << " exceeds tol " << tol << "\n";
    return false;
  }
  return true;
}

}  // namespace

int run_all(std::ostream& out) {
  std::vector<BarrierCase> barrier_cases;
  std::vector<Criterion> criteria = {
      {1, "operator conditions (homogeneity 1e-9, monotonicity 1e-9, zoo + duals)",
       criterion_conditions},
      {2, "coercivity closed forms and sandwich bounds (1e-6)", criterion_closed_forms},
      {3, "case classification (inf: Case I, pucci_minus(1,3,1): lambda_bar = 4)",
       criterion_case_classification},
      {4, "radial reduction identity and two-sided envelope (1e-8)", criterion_radial},
      {5, "phi ODE closed forms (1e-8) and 4th-order convergence", criterion_phi},
      {6, "barrier residual signs, all families (1e-8 relative) + negative control",
       [&](std::ostream& o) {
         barrier_cases = build_barrier_matrix();
         return criterion_barrier_residuals(barrier_cases, o);
       }},
      {7, "barrier structure: anchors, continuity, bracket, exact identities",
       [&](std::ostream& o) { return criterion_barrier_structure(barrier_cases, o); }},
      {8, "grid comparison/max principle (20 pairs per scheme) + quotient",
       criterion_grid_principles},
      {9, "barrier sandwich around the solved field, 16-anchor sweep",
       criterion_sandwich},
      {10, "transform equivalence: direct vs phi-mapped solve", criterion_transform},
  };

  int failed = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << "    exception: " << e.what() << "\n";
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  ("
        << secs << " s)\n";
    out << detail.str();
    if (!ok) ++failed;
  }
  return failed;
}

}  // namespace parabarrier::acceptance
