// Command-line front end: coercivity profiling, phi integration, barrier
// construction/verification, grid solves, config-driven experiment runs and
// the acceptance selftest.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parabarrier/acceptance.hpp"
#include "parabarrier/barriers.hpp"
#include "parabarrier/errors.hpp"
#include "parabarrier/experiment.hpp"
#include "parabarrier/solver.hpp"

using namespace parabarrier;
using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int cmd_coercivity(const std::string& op_key, double lmin, double lmax, int points,
                   int samples, const std::string& out_path) {
  Operator op = operator_from_key(op_key, 2);
  CoercivityProfile prof = profile(op, lmin, lmax, points, samples);
  std::string text = coercivity_profile_to_json(prof);
  if (out_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream os(out_path);
    os << text << '\n';
  }
  std::cout << "operator " << op.name << ": case " << to_string(prof.case_tag)
            << ", lambda1 " << prof.lambda1 << ", lambda0 " << prof.lambda0
            << ", lambda_bar " << prof.lambda_bar << '\n';
  return prof.case_tag == CaseTag::Inconclusive ? 3 : 0;
}

int cmd_phi(const std::string& f_key, double k, double phi0, const std::string& span,
            int steps, const std::string& out_path) {
  Nonlinearity nl = Nonlinearity::from_key(f_key);
  std::vector<double> ab = parse_csv_doubles(span);
  if (ab.size() != 2) throw InputError("phi: --span expects a,b");
  PhiSolution sol = solve_phi(nl, k, phi0, ab[0], ab[1], steps);
  std::ofstream os(out_path.empty() ? "phi.csv" : out_path);
  os << "tau,phi,phi_prime\n";
  char buf[120];
  for (size_t i = 0; i < sol.tau_grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", sol.tau_grid[i],
                  sol.phi_grid[i], sol.phi_prime_grid[i]);
    os << buf;
  }
  if (sol.truncated)
    std::cout << "phi: integration truncated at tau = " << sol.truncation_tau << '\n';
  return 0;
}

int cmd_barrier(const std::string& problem_path, const std::string& family,
                const std::string& anchor, double eps, int samples,
                const std::string& out_path) {
  ExperimentConfig cfg = ExperimentConfig::from_file(problem_path);
  ProblemSpec ps = build_problem(cfg);
  if (eps <= 0.0) eps = ps.default_eps();
  std::vector<double> a = parse_csv_doubles(anchor);
  if (a.size() != 3) throw InputError("barrier: --anchor expects x,y,s");
  Vec y{a[0], a[1]};
  double s = a[2];

  BarrierSpec bar;
  if (family == "init_bump") bar = build_init_bump(ps, y, eps);
  else if (family == "init_indent") bar = build_init_indent(ps, y, eps);
  else if (family == "side_bump_case1") bar = build_side_case1(ps, BarrierKind::Bump, y, s, eps);
  else if (family == "side_indent_case1") bar = build_side_case1(ps, BarrierKind::Indent, y, s, eps);
  else if (family == "side_bump_case2") bar = build_side_case2(ps, BarrierKind::Bump, y, s, eps);
  else if (family == "side_indent_case2") bar = build_side_case2(ps, BarrierKind::Indent, y, s, eps);
  else throw InputError("barrier: unknown family " + family);

  ResidualReport rr = verify_inequality(ps, bar, samples, cfg.seed);
  StructureReport sr = check_structure(ps, bar, 2000, cfg.seed + 3);
  CompatReport br = boundary_compatibility(ps, bar, 4000);

  ordered_json rep;
  rep["family"] = family;
  rep["anchor"] = {y[0], y[1], s};
  rep["constant_barrier"] = bar.constant_barrier;
  rep["constants"] = {{"ell", bar.c.ell},     {"tau", bar.c.tau}, {"b", bar.c.b},
                      {"beta", bar.c.beta},   {"L", bar.c.L},     {"delta", bar.c.delta},
                      {"rho", bar.c.rho},     {"epsilon", eps}};
  rep["region"] = {{"center", {bar.center[0], bar.center[1]}},
                   {"r_lo", bar.r_lo},
                   {"r_hi", bar.r_hi},
                   {"t_lo", bar.t_lo},
                   {"t_hi", bar.t_hi}};
  rep["residual"] = {{"samples", rr.samples},
                     {"min", rr.min_residual},
                     {"max", rr.max_residual},
                     {"worst_margin", rr.worst_margin},
                     {"witness_x", rr.worst_x.empty()
                                       ? ordered_json(nullptr)
                                       : ordered_json({rr.worst_x[0], rr.worst_x[1]})},
                     {"witness_t", rr.worst_t},
                     {"violations", rr.violations}};
  rep["structure_pass"] = sr.passed;
  rep["compat_pass"] = br.passed;
  bool pass = rr.passed && sr.passed && br.passed;
  rep["pass"] = pass;
  std::string text = rep.dump(2);
  if (out_path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream os(out_path);
    os << text << '\n';
    std::cout << (pass ? "pass" : "FAIL") << ": report written to " << out_path << '\n';
  }
  return pass ? 0 : 1;
}

int cmd_solve(const std::string& problem_path, const std::string& grid,
              const std::string& scheme, const std::string& out_bin,
              const std::string& out_csv) {
  ExperimentConfig cfg = ExperimentConfig::from_file(problem_path);
  if (!grid.empty()) {
    std::vector<double> g = parse_csv_doubles(grid);
    if (g.size() != 3) throw InputError("solve: --grid expects nx,ny,nt");
    cfg.nx = static_cast<int>(g[0]);
    cfg.ny = static_cast<int>(g[1]);
    cfg.nt = static_cast<int>(g[2]);
  }
  if (!scheme.empty()) cfg.scheme_key = scheme;
  ProblemSpec ps = build_problem(cfg);
  SchemeKey sk = scheme_from_key(cfg.scheme_key);
  check_scheme_compatible(sk, ps.op);
  GridGeometry geom = ps.domain.kind == Domain::Kind::Box
                          ? GridGeometry::box(cfg.nx, cfg.ny, ps.domain.lo, ps.domain.hi)
                          : GridGeometry::annulus(cfg.nx, cfg.ny, ps.domain.center,
                                                  ps.domain.inner, ps.domain.outer);
  GridField field = make_initial_field(ps, geom);
  if (cfg.nt > 0) {
    for (int m = 0; m < cfg.nt && field.times.back() < ps.T; ++m) step(ps, field, sk);
  } else {
    field = solve(ps, std::move(field), sk, ps.T);
  }
  if (!out_bin.empty()) field.write_binary(out_bin);
  if (!out_csv.empty()) field.write_slices_csv(out_csv);
  std::cout << "solved " << field.nt() << " levels to t = " << field.times.back()
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for doubly nonlinear degenerate parabolic equations"};
  app.require_subcommand(1);

  auto* c_coer = app.add_subcommand("coercivity", "compute a lambda-profile");
  std::string op_key = "inf_laplacian", out_path;
  double lmin = -4.0, lmax = 4.0;
  int points = 33, samples = 4096;
  c_coer->add_option("--op", op_key, "operator key");
  c_coer->add_option("--lmin", lmin);
  c_coer->add_option("--lmax", lmax);
  c_coer->add_option("--points", points);
  c_coer->add_option("--samples", samples);
  c_coer->add_option("--out", out_path, "profile JSON path");

  auto* c_phi = app.add_subcommand("phi", "integrate the change-of-variables ODE");
  std::string f_key = "constant:1", span = "0,1", phi_out;
  double kk = 2.0, phi0 = 1.0;
  int steps = 1000;
  c_phi->add_option("--f", f_key, "nonlinearity key:params");
  c_phi->add_option("--k", kk);
  c_phi->add_option("--phi0", phi0);
  c_phi->add_option("--span", span, "a,b");
  c_phi->add_option("--steps", steps);
  c_phi->add_option("--out", phi_out, "CSV path (tau, phi, phi_prime)");

  auto* c_bar = app.add_subcommand("barrier", "build and verify one barrier");
  std::string problem_path, family = "init_bump", anchor = "0.5,0.5,0", bar_out;
  double eps = 0.0;
  int bar_samples = 10000;
  c_bar->add_option("--problem", problem_path)->required();
  c_bar->add_option("--family", family);
  c_bar->add_option("--anchor", anchor, "x,y,s");
  c_bar->add_option("--eps", eps);
  c_bar->add_option("--samples", bar_samples);
  c_bar->add_option("--out", bar_out);

  auto* c_solve = app.add_subcommand("solve", "explicit grid solve");
  std::string grid, scheme, out_bin = "field.bin", out_csv = "slices.csv";
  std::string solve_problem;
  c_solve->add_option("--problem", solve_problem)->required();
  c_solve->add_option("--grid", grid, "nx,ny,nt (nt 0 = run to horizon)");
  c_solve->add_option("--scheme", scheme, "inf | plap | pucci");
  c_solve->add_option("--out", out_bin);
  c_solve->add_option("--csv", out_csv);

  auto* c_run = app.add_subcommand("run", "run a config-driven experiment");
  std::string run_config, run_out = ".";
  c_run->add_option("config", run_config)->required();
  c_run->add_option("--out-dir", run_out);

  auto* c_self = app.add_subcommand("selftest", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_coer->parsed())
      return cmd_coercivity(op_key, lmin, lmax, points, samples, out_path);
    if (c_phi->parsed()) return cmd_phi(f_key, kk, phi0, span, steps, phi_out);
    if (c_bar->parsed())
      return cmd_barrier(problem_path, family, anchor, eps, bar_samples, bar_out);
    if (c_solve->parsed())
      return cmd_solve(solve_problem, grid, scheme, out_bin, out_csv);
    if (c_run->parsed()) {
      ExperimentConfig cfg;
      try {
        cfg = ExperimentConfig::from_file(run_config);
      } catch (const InputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
      }
      RunResult res = run_experiment(cfg, run_out);
      if (!res.message.empty()) std::cerr << res.message << '\n';
      std::cout << "report written to " << run_out << "/report.json (exit "
                << res.exit_code << ")\n";
      return res.exit_code;
    }
    if (c_self->parsed()) {
      int failed = acceptance::run_all(std::cout);
      return failed == 0 ? 0 : 1;
    }
  } catch (const InapplicableError& e) {
    std::cerr << "inapplicable: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
