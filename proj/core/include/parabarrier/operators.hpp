#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parabarrier/linalg.hpp"

namespace parabarrier {

struct HomogeneityExponents {
  double k1 = 0.0;  // gradient degree
  int k2 = 1;       // Hessian degree, positive odd integer
  double k() const { return k1 + k2; }
  double gamma() const { return k1 + 2.0 * k2; }
};

/// Degenerate elliptic operator H(p, X) with homogeneity metadata and an
/// optional closed-form profile λ ↦ H(e, I - λ e⊗e).
struct Operator {
  std::string name;
  int dim = 2;
  double k1 = 0.0;
  int k2 = 1;
  std::function<double(const Vec&, const SymMat&)> eval;
  std::function<double(double, const Vec&)> lambda_profile;  // may be empty

  bool has_profile() const { return static_cast<bool>(lambda_profile); }
  HomogeneityExponents exponents() const { return {k1, k2}; }
  double k() const { return k1 + k2; }
  double gamma() const { return k1 + 2.0 * k2; }
};

/// Checked H(p, X). Throws InputError on dimension mismatch.
double evaluate(const Operator& op, const Vec& p, const SymMat& X);
/// Same, but X supplied as full row-major storage and validated for symmetry.
double evaluate(const Operator& op, const Vec& p, const std::vector<double>& x_full,
                double sym_tol = 1e-9);

/// Dual operator Ĥ(p, X) = -H(p, -X). Shares homogeneity exponents with H.
Operator dual(const Operator& op);

// ---- operator zoo -------------------------------------------------------

Operator make_inf_laplacian(int dim);
// |Du|^q Δu + a |Du|^{q-2} Δ∞u,  q ≥ 0, a > -1.
Operator make_p_laplacian_variant(double q, double a, int dim);
// |Du|^q Σ_i |D_i u|^p D_ii u,  p, q ≥ 0.
Operator make_pseudo_p(double p, double q, int dim);
// Σ_ij |D_i u|^q |D_j u|^q D_i u D_j u D_ij u,  q ≥ 0.
Operator make_weighted_inf(double q, int dim);
// |Du|^q ( ϑ̂ Σ_{a_i≥0} a_i + θ Σ_{a_i<0} a_i ),  0 < θ ≤ ϑ̂.
Operator make_pucci_plus(double theta, double vartheta, double q, int dim);
Operator make_pucci_minus(double theta, double vartheta, double q, int dim);

/// Default-parameter instance of each of the six zoo families.
std::vector<Operator> zoo(int dim);

/// Parses a zoo key such as "inf_laplacian", "p_laplacian_variant(2,2)",
/// "pseudo_p(3,0)", "weighted_inf(2)", "pucci_plus(1,2,0)", "pucci_minus(1,3,1)".
Operator operator_from_key(const std::string& key, int dim);

// ---- property checks (Conditions A and B, sampled) ----------------------

struct PropertyViolation {
  double magnitude = 0.0;
  std::string detail;
};

struct PropertyCheckReport {
  std::string op_name;
  std::string property;
  int samples = 0;
  int violations = 0;
  double worst = 0.0;  // largest violation magnitude observed
  std::vector<PropertyViolation> witnesses;  // capped
  bool passed = true;
};

/// Condition A sampled: eval(p, X + VᵀV) ≥ eval(p, X) - tol.
PropertyCheckReport check_monotonicity(const Operator& op, int samples,
                                       std::uint64_t rng_seed, double tol = 1e-9);
/// Condition B sampled: both homogeneity identities at relative tolerance.
PropertyCheckReport check_homogeneity(const Operator& op, int samples,
                                      std::uint64_t rng_seed, double rel_tol = 1e-9);
/// H(p, O) = 0 for sampled p.
PropertyCheckReport check_zero_matrix(const Operator& op, int samples,
                                      std::uint64_t rng_seed, double tol = 0.0);
/// |eval(e, I-λe⊗e) - lambda_profile(λ, e)| ≤ tol over λ ∈ [lo, hi] and random e.
PropertyCheckReport check_profile_consistency(const Operator& op, double lambda_lo,
                                              double lambda_hi, int lambda_points,
                                              int directions, std::uint64_t rng_seed,
                                              double tol = 1e-9);

}  // namespace parabarrier
