#include "parabarrier/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "parabarrier/barriers.hpp"
#include "parabarrier/errors.hpp"
#include "parabarrier/solver.hpp"

namespace parabarrier {

using json = nlohmann::ordered_json;

namespace {

ChiSpec parse_chi(const json& j) {
  if (j.is_null()) return ChiSpec::constant(0.0);
  std::string kind = j.value("kind", "constant");
  if (kind == "constant") return ChiSpec::constant(j.value("value", 0.0));
  if (kind == "sinusoid")
    return ChiSpec::sinusoid(j.value("amplitude", 0.0), j.value("period", 1.0));
  throw InputError("config: unknown chi kind: " + kind);
}

Domain parse_domain(const json& j) {
  if (j.is_null()) return Domain::box({0.0, 0.0}, {1.0, 1.0});
  std::string kind = j.value("kind", "box");
  if (kind == "box") {
    auto lo = j.value("lo", std::vector<double>{0.0, 0.0});
    auto hi = j.value("hi", std::vector<double>{1.0, 1.0});
    return Domain::box({lo.at(0), lo.at(1)}, {hi.at(0), hi.at(1)});
  }
  if (kind == "annulus") {
    auto c = j.value("center", std::vector<double>{0.0, 0.0});
    return Domain::annulus({c.at(0), c.at(1)}, j.value("inner", 0.5),
                           j.value("outer", 1.0));
  }
  throw InputError("config: unknown domain kind: " + kind);
}

BoundaryData make_boundary(const std::string& key, const std::vector<double>& p) {
  if (key == "constant") {
    if (p.size() != 1) throw InputError("boundary constant expects [c]");
    return BoundaryData::constant(p[0]);
  }
  if (key == "gaussian") {
    if (p.size() != 5) throw InputError("boundary gaussian expects [base,amp,cx,cy,w]");
    return BoundaryData::gaussian(p[0], p[1], {p[2], p[3]}, p[4]);
  }
  if (key == "ramp") {
    if (p.size() != 3) throw InputError("boundary ramp expects [base,sx,sy]");
    return BoundaryData::ramp(p[0], {p[1], p[2]});
  }
  if (key == "cos_product") {
    if (p.size() != 4) throw InputError("boundary cos_product expects [base,amp,fx,fy]");
    return BoundaryData::cos_product(p[0], p[1], p[2], p[3]);
  }
  throw InputError("config: unknown boundary family: " + key);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.seed = j.value("seed", 42ULL);
    if (j.contains("operator")) cfg.operator_key = j["operator"].value("key", "");
    if (j.contains("nonlinearity"))
      cfg.nonlinearity_key = j["nonlinearity"].value("key", "unit");
    cfg.gamma_exp = j.value("gamma", 1.0);
    cfg.chi = parse_chi(j.contains("chi") ? j["chi"] : json());
    cfg.horizon = j.value("horizon", 0.1);
    cfg.domain = parse_domain(j.contains("domain") ? j["domain"] : json());
    if (j.contains("boundary")) {
      cfg.boundary_key = j["boundary"].value("family", "constant");
      cfg.boundary_params =
          j["boundary"].value("params", std::vector<double>{1.0});
    }
    if (j.contains("grid")) {
      cfg.nx = j["grid"].value("nx", 32);
      cfg.ny = j["grid"].value("ny", 32);
      cfg.nt = j["grid"].value("nt", 0);
    }
    cfg.scheme_key = j.value("scheme", "");
    if (j.contains("barriers")) {
      const json& b = j["barriers"];
      cfg.eps = b.value("eps", 0.0);
      cfg.barrier_samples = b.value("samples", 10000);
      if (b.contains("anchors"))
        for (const auto& a : b["anchors"])
          cfg.anchors.push_back({a.at(0).get<double>(), a.at(1).get<double>(),
                                 a.size() > 2 ? a.at(2).get<double>() : 0.0});
      cfg.families = b.value("families", std::vector<std::string>{});
    }
    if (j.contains("coercivity")) {
      const json& c = j["coercivity"];
      cfg.lambda_min = c.value("lambda_min", -4.0);
      cfg.lambda_max = c.value("lambda_max", 4.0);
      cfg.profile_points = c.value("points", 33);
      cfg.sphere_samples = c.value("samples", 4096);
      cfg.polish_iters = c.value("polish", 50);
    }
    if (j.contains("tolerances")) {
      cfg.tol_c1 = j["tolerances"].value("tol_c1", 5.0);
      cfg.residual_rel = j["tolerances"].value("residual_rel", 1e-8);
      if (cfg.residual_rel < 1e-15 || cfg.tol_c1 <= 0.0)
        throw InputError("config: tolerance overrides below the machine-eps floor");
    }
    cfg.comparison_shift = j.value("comparison_shift", 0.1);
    cfg.checks = j.value("checks", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("config: cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return from_string(ss.str());
}

ProblemSpec build_problem(const ExperimentConfig& cfg) {
  ProblemSpec ps;
  ps.op = operator_from_key(cfg.operator_key, 2);
  ps.coer = profile(ps.op, cfg.lambda_min, cfg.lambda_max, cfg.profile_points,
                    cfg.sphere_samples, cfg.polish_iters);
  if (cfg.nonlinearity_key != "unit" && !cfg.nonlinearity_key.empty())
    ps.nl = Nonlinearity::from_key(cfg.nonlinearity_key);
  ps.Gamma = cfg.gamma_exp;
  ps.chi = cfg.chi;
  ps.T = cfg.horizon;
  ps.domain = cfg.domain;
  ps.h = make_boundary(cfg.boundary_key, cfg.boundary_params);
  ps.finalize();
  return ps;
}

std::string coercivity_profile_to_json(const CoercivityProfile& prof) {
  json j;
  j["operator"] = prof.operator_name;
  j["grid"] = json::array();
  for (const auto& p : prof.grid) {
    json row;
    row["lambda"] = p.lambda;
    row["m"] = p.m;
    row["mu"] = p.mu;
    row["m_min"] = p.m_min;
    row["m_max"] = p.m_max;
    row["mu_min"] = p.mu_min;
    row["mu_max"] = p.mu_max;
    j["grid"].push_back(row);
  }
  j["lambda1"] = prof.lambda1;
  j["lambda0"] = prof.lambda0;
  j["lambda_bar"] = prof.lambda_bar;
  j["case"] = to_string(prof.case_tag);
  j["sphere_samples"] = prof.sphere_samples;
  return j.dump(2);
}

namespace {

struct CheckRow {
  std::string name;
  bool passed = true;
  json metrics;
};

BarrierSpec build_family(const ProblemSpec& ps, const std::string& fam, const Vec& y,
                         double s, double eps) {
  if (fam == "init_bump") return build_init_bump(ps, y, eps);
  if (fam == "init_indent") return build_init_indent(ps, y, eps);
  if (fam == "side_bump_case1") return build_side_case1(ps, BarrierKind::Bump, y, s, eps);
  if (fam == "side_indent_case1")
    return build_side_case1(ps, BarrierKind::Indent, y, s, eps);
  if (fam == "side_bump_case2") return build_side_case2(ps, BarrierKind::Bump, y, s, eps);
  if (fam == "side_indent_case2")
    return build_side_case2(ps, BarrierKind::Indent, y, s, eps);
  throw InputError("config: unknown barrier family: " + fam);
}

std::vector<std::string> default_families(const ProblemSpec& ps, double s) {
  if (s == 0.0) return {"init_bump", "init_indent"};
  if (ps.coer.case_tag == CaseTag::CaseI) return {"side_bump_case1", "side_indent_case1"};
  return {"side_bump_case2", "side_indent_case2"};
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  RunResult result;
  std::filesystem::create_directories(out_dir);
  json report;
  report["seed"] = cfg.seed;
  report["operator"] = cfg.operator_key;
  report["checks"] = json::array();
  std::vector<CheckRow> rows;
  bool failed = false;

  try {
    ProblemSpec ps = build_problem(cfg);
    double eps = cfg.eps > 0.0 ? cfg.eps : ps.default_eps();

    // canonical pipeline order regardless of the order in the config
    const std::vector<std::string> order = {
        "conditions", "coercivity", "concavity",     "barriers", "solve",
        "comparison", "quotient",   "max_principle", "sandwich"};
    std::vector<std::string> checks;
    for (const std::string& name : order)
      for (const std::string& c : cfg.checks)
        if (c == name) checks.push_back(c);
    for (const std::string& c : cfg.checks)
      if (std::find(order.begin(), order.end(), c) == order.end()) checks.push_back(c);

    for (const std::string& check : checks) {
      CheckRow row;
      row.name = check;
      if (check == "conditions") {
        int viol = 0;
        double worst = 0.0;
        for (const Operator* op : {&ps.op}) {
          for (const Operator& cand : {*op, dual(*op)}) {
            auto h = check_homogeneity(cand, 1000, cfg.seed);
            auto m = check_monotonicity(cand, 1000, cfg.seed + 1);
            auto z = check_zero_matrix(cand, 100, cfg.seed + 2);
            viol += h.violations + m.violations + z.violations;
            worst = std::max({worst, h.worst, m.worst, z.worst});
          }
        }
        row.passed = viol == 0;
        row.metrics["violations"] = viol;
        row.metrics["worst"] = worst;
      } else if (check == "coercivity") {
        row.metrics["case"] = to_string(ps.coer.case_tag);
        row.metrics["lambda1"] = ps.coer.lambda1;
        row.metrics["lambda0"] = ps.coer.lambda0;
        row.metrics["lambda_bar"] = ps.coer.lambda_bar;
        CrosscheckReport cc = crosscheck_closed_form(ps.coer, ps.op);
        row.passed = cc.passed && ps.coer.case_tag != CaseTag::Inconclusive;
        row.metrics["closed_form_violations"] = static_cast<int>(cc.violations.size());
        std::ofstream pf(out_dir + "/coercivity_profile.json");
        pf << coercivity_profile_to_json(ps.coer);
        std::ofstream pcsv(out_dir + "/coercivity_profile.csv");
        pcsv << "lambda,m,mu\n";
        for (const auto& p : ps.coer.grid)
          pcsv << p.lambda << ',' << p.m << ',' << p.mu << '\n';
      } else if (check == "concavity") {
        if (ps.part_one()) {
          if (ps.k() <= 1.0)
            throw InapplicableError(
                "concavity gate: k = 1 admits only f == 1 (the doubly nonlinear "
                "transform needs k > 1)");
          ConcavityReport cr = check_concavity(*ps.nl, ps.k(), ps.theta_inf / 2.0,
                                               2.0 * ps.M_sup, 65);
          if (!cr.concave)
            throw InapplicableError(
                "concavity gate: f^{1/(k-1)} is not concave on [theta/2, 2M]");
          row.metrics["worst_gap"] = cr.worst_gap;
        } else {
          row.metrics["skipped"] = "f == 1";
        }
      } else if (check == "barriers") {
        json items = json::array();
        for (const auto& a : cfg.anchors) {
          Vec y{a[0], a[1]};
          double s = a[2];
          std::vector<std::string> fams =
              cfg.families.empty() ? default_families(ps, s) : cfg.families;
          for (const std::string& fam : fams) {
            bool init_fam = fam.rfind("init", 0) == 0;
            if (init_fam != (s == 0.0)) continue;
            BarrierSpec bar = build_family(ps, fam, y, s, eps);
            ResidualReport rr =
                verify_inequality(ps, bar, cfg.barrier_samples, cfg.seed,
                                  cfg.residual_rel);
            StructureReport sr = check_structure(ps, bar, 2000, cfg.seed + 3);
            CompatReport br = boundary_compatibility(ps, bar, 4000);
            json item;
            item["family"] = fam;
            item["anchor"] = {y[0], y[1], s};
            item["constants"] = {{"ell", bar.c.ell}, {"tau", bar.c.tau},
                                 {"b", bar.c.b},     {"beta", bar.c.beta},
                                 {"delta", bar.c.delta}, {"rho", bar.c.rho}};
            item["constant_barrier"] = bar.constant_barrier;
            item["residual_min"] = rr.min_residual;
            item["residual_max"] = rr.max_residual;
            item["worst_margin"] = rr.worst_margin;
            item["residual_pass"] = rr.passed;
            item["structure_pass"] = sr.passed;
            item["compat_pass"] = br.passed;
            bool ok = rr.passed && sr.passed && br.passed;
            row.passed = row.passed && ok;
            items.push_back(item);
          }
        }
        row.metrics["barriers"] = items;
      } else if (check == "solve" || check == "max_principle" || check == "sandwich") {
        if (cfg.scheme_key.empty())
          throw InputError("config: grid checks need a scheme key");
        SchemeKey sk = scheme_from_key(cfg.scheme_key);
        check_scheme_compatible(sk, ps.op);
        GridGeometry geom =
            ps.domain.kind == Domain::Kind::Box
                ? GridGeometry::box(cfg.nx, cfg.ny, ps.domain.lo, ps.domain.hi)
                : GridGeometry::annulus(cfg.nx, cfg.ny, ps.domain.center,
                                        ps.domain.inner, ps.domain.outer);
        GridField field = solve(ps, make_initial_field(ps, geom), sk, ps.T);
        if (check == "solve") {
          field.write_binary(out_dir + "/field.bin");
          field.write_slices_csv(out_dir + "/slices.csv");
          row.metrics["levels"] = field.nt();
          row.metrics["final_time"] = field.times.back();
        } else if (check == "max_principle") {
          GridCheckReport mp = check_max_principle(field, cfg.tol_c1);
          row.passed = mp.passed;
          row.metrics["worst"] = mp.worst;
          row.metrics["tol"] = mp.tol;
        } else {
          std::vector<BarrierSpec> bumps, indents;
          for (const auto& a : cfg.anchors) {
            Vec y{a[0], a[1]};
            double s = a[2];
            for (const std::string& fam : default_families(ps, s)) {
              BarrierSpec bar = build_family(ps, fam, y, s, eps);
              (bar.is_bump ? bumps : indents).push_back(bar);
            }
          }
          SandwichReport sw = check_sandwich(ps, field, bumps, indents, cfg.tol_c1);
          row.passed = sw.check.passed;
          row.metrics["worst"] = sw.check.worst;
          row.metrics["tol"] = sw.check.tol;
          row.metrics["anchor_gaps"] = sw.anchor_gaps;
        }
      } else if (check == "comparison" || check == "quotient") {
        if (cfg.scheme_key.empty())
          throw InputError("config: grid checks need a scheme key");
        SchemeKey sk = scheme_from_key(cfg.scheme_key);
        bool quotient = check == "quotient";
        if (quotient) {
          // quotient form needs the f(u) = c u^{k-1} family
          if (!ps.nl || ps.nl->family != Nonlinearity::Family::Power ||
              std::abs(ps.nl->expo - (ps.k() - 1.0)) > 1e-12)
            throw InapplicableError(
                "quotient comparison applies to the f(u) = c u^{k-1} family only");
        }
        ProblemSpec ps2 = ps;
        auto base = ps.h;
        if (quotient) {
          ps2.h.h = [base, factor = 1.0 + cfg.comparison_shift](const Vec& x, double t) {
            return factor * base(x, t);
          };
        } else {
          ps2.h.h = [base, shift = cfg.comparison_shift](const Vec& x, double t) {
            return base(x, t) + shift;
          };
        }
        ps2.finalize();
        GridGeometry geom =
            ps.domain.kind == Domain::Kind::Box
                ? GridGeometry::box(cfg.nx, cfg.ny, ps.domain.lo, ps.domain.hi)
                : GridGeometry::annulus(cfg.nx, cfg.ny, ps.domain.center,
                                        ps.domain.inner, ps.domain.outer);
        auto [sub, sup] = solve_pair(ps, ps2, geom, sk, ps.T);
        GridCheckReport cr = quotient ? check_quotient(sup, sub, cfg.tol_c1)
                                      : check_comparison(sub, sup, cfg.tol_c1);
        row.passed = cr.passed;
        row.metrics["worst"] = cr.worst;
        row.metrics["tol"] = cr.tol;
      } else {
        throw InputError("config: unknown check: " + check);
      }
      failed = failed || !row.passed;
      json jr;
      jr["name"] = row.name;
      jr["status"] = row.passed ? "pass" : "fail";
      jr["metrics"] = row.metrics;
      report["checks"].push_back(jr);
    }
  } catch (const InapplicableError& e) {
    result.exit_code = 3;
    result.message = e.what();
    report["error"] = e.what();
    report["overall"] = "inapplicable";
    result.report_json = report.dump(2);
    std::ofstream os(out_dir + "/report.json");
    os << result.report_json << '\n';
    return result;
  }

  report["overall"] = failed ? "fail" : "pass";
  result.exit_code = failed ? 1 : 0;
  result.report_json = report.dump(2);
  std::ofstream os(out_dir + "/report.json");
  os << result.report_json << '\n';
  return result;
}

}  // namespace parabarrier
