#pragma once

#include <string>
#include <vector>

#include "parabarrier/operators.hpp"

namespace parabarrier {

struct SphereExtrema {
  double m_min = 0.0, m_max = 0.0;    // extrema of H(e, I - λ e⊗e)
  double mu_min = 0.0, mu_max = 0.0;  // extrema of H(e, λ e⊗e - I)
  Vec arg_m_min, arg_m_max, arg_mu_min, arg_mu_max;
  double m() const;   // min{ m_min, -mu_max }
  double mu() const;  // max{ m_max, -mu_min }
};

/// Quasi-random sphere sampling plus gradient-free coordinate polish.
/// Deterministic for fixed inputs. Reported minima never exceed the value at
/// any sampled direction (and maxima never fall below it).
SphereExtrema sphere_extrema(const Operator& op, double lambda, int samples = 4096,
                             int polish_iters = 50);

/// Same search restricted to a fixed direction pool (plus the lattice). Used
/// internally so every grid λ sees one shared direction set.
SphereExtrema sphere_extrema_pooled(const Operator& op, double lambda,
                                    const std::vector<Vec>& lattice,
                                    const std::vector<Vec>& pool);

enum class CaseTag { CaseI, CaseII, Fails, Inconclusive };

std::string to_string(CaseTag t);

struct ProfilePoint {
  double lambda = 0.0;
  double m = 0.0, mu = 0.0;
  double m_min = 0.0, m_max = 0.0, mu_min = 0.0, mu_max = 0.0;
};

struct CoercivityProfile {
  std::string operator_name;
  std::vector<ProfilePoint> grid;  // ascending lambda
  double lambda1 = 0.0;            // sign change of m, bisection-refined
  double lambda0 = 0.0;            // sign change of mu, bisection-refined
  double lambda_bar = 0.0;
  CaseTag case_tag = CaseTag::Inconclusive;
  int sphere_samples = 0;

  double lambda_lo() const { return grid.front().lambda; }
  double lambda_hi() const { return grid.back().lambda; }
  bool covers(double lambda) const;
  /// Conservative envelope values at arbitrary λ inside the grid: m from the
  /// right grid neighbor, μ from the left one (both functions are
  /// non-increasing, so the radial two-sided envelope stays valid). Exact at
  /// grid points.
  double m_at(double lambda) const;
  double mu_at(double lambda) const;
};

/// Fills the λ grid, computes m and μ, locates λ₁ and λ₀ by sign change with
/// bisection refinement to 1e-6, classifies Case (i)/(ii).
CoercivityProfile profile(const Operator& op, double lambda_min, double lambda_max,
                          int points, int samples = 4096, int polish_iters = 50);

/// One-off m, μ evaluation at a single λ (fresh sphere search).
double m_exact(const Operator& op, double lambda, int samples = 4096, int polish = 50);
double mu_exact(const Operator& op, double lambda, int samples = 4096, int polish = 50);

struct BoundViolation {
  double lambda = 0.0;
  double value = 0.0, bound = 0.0;
  std::string side;
};

struct CrosscheckReport {
  std::string op_name;
  int points_checked = 0;
  std::vector<BoundViolation> violations;
  bool passed = true;
};

/// Checks the numeric profile against the operator's closed form (when
/// lambda_profile is e-independent) or against the Hölder sandwich bounds for
/// the pseudo p-Laplacian / weighted-∞ families (λ ≥ 0 branch).
CrosscheckReport crosscheck_closed_form(const CoercivityProfile& prof, const Operator& op,
                                        double tol = 1e-6);

}  // namespace parabarrier
