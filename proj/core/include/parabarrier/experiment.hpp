#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "parabarrier/problem.hpp"

namespace parabarrier {

/// Parsed experiment configuration (JSON document, schema in the README).
struct ExperimentConfig {
  std::uint64_t seed = 42;
  std::string operator_key = "inf_laplacian";
  std::string nonlinearity_key = "unit";  // "unit" means f ≡ 1
  double gamma_exp = 1.0;                 // Γ
  ChiSpec chi;
  double horizon = 0.1;
  Domain domain = Domain::box({0.0, 0.0}, {1.0, 1.0});
  std::string boundary_key = "constant";
  std::vector<double> boundary_params{1.0};
  int nx = 32, ny = 32, nt = 0;
  std::string scheme_key;
  double eps = 0.0;  // 0 = problem default
  std::vector<std::array<double, 3>> anchors;  // x, y, s  (s = 0 → initial family)
  std::vector<std::string> families;  // empty = all applicable at each anchor
  int barrier_samples = 10000;
  double lambda_min = -4.0, lambda_max = 4.0;
  int profile_points = 33, sphere_samples = 4096, polish_iters = 50;
  double tol_c1 = 5.0, residual_rel = 1e-8;
  double comparison_shift = 0.1;
  std::vector<std::string> checks;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_string(const std::string& text);
};

/// Assembles the ProblemSpec (operator, coercivity profile, data bounds) the
/// config describes.
ProblemSpec build_problem(const ExperimentConfig& cfg);

struct RunResult {
  int exit_code = 0;  // 0 pass, 1 check failure, 2 config error, 3 inapplicable
  std::string report_json;
  std::string message;
};

/// Executes the requested checks in pipeline order and writes report.json
/// (plus CSV side outputs) under out_dir. Deterministic for fixed config.
RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

std::string coercivity_profile_to_json(const CoercivityProfile& prof);

}  // namespace parabarrier
