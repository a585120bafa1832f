#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "parabarrier/problem.hpp"
#include "parabarrier/radial.hpp"

namespace parabarrier {

enum class BarrierFamily {
  InitBump,
  InitIndent,
  SideBumpI,
  SideIndentI,
  SideBumpII,
  SideIndentII
};
enum class Part { I, II };
enum class BarrierKind { Bump, Indent };

std::string to_string(BarrierFamily f);

struct BarrierConstants {
  double ell = 0.0, tau = 0.0, b = 0.0, beta = 2.0;
  double L = 0.0;  // the product ℓτ, fixed by the data
  double delta = 0.0;  // Init/Side-I spatial radius
  double rho = 0.0;    // Side-II shell radius
};

/// One constructed bump/indent sub-/super-solution: exponential-in-time,
/// radial-in-space, glued to a constant outside the tapering region R.
struct BarrierSpec {
  BarrierFamily family = BarrierFamily::InitBump;
  Part part = Part::I;
  bool is_bump = true;
  bool constant_barrier = false;

  Vec anchor;
  double s = 0.0;
  double epsilon = 0.0;
  double amp = 0.0;            // ϑ-2ε (bump) or M+2ε (indent)
  double outside_value = 0.0;  // equals amp
  double anchor_value = 0.0;   // h(anchor) ∓ 2ε

  BarrierConstants c;

  Vec center;  // radial center: the anchor, or the exterior-ball center
  double spatial_a = 1.0, spatial_b = 0.0, spatial_beta = 2.0;  // g(r)=a+b r^β
  double r_lo = 0.0, r_hi = 0.0;
  double t_lo = 0.0, t_hi = 0.0;  // region time range clipped to [0, T]
  double horizon = 0.0;

  double mu_used = 0.0;     // μ value the construction rests on
  double lambda_used = 0.0; // λ at which μ was evaluated

  double time_factor(double t) const;
  double r_max_at(double t) const;
  bool in_region(const Vec& x, double t) const;
  double value(const Vec& x, double t) const;  // total function on Ω̄_T
  GradHess space_derivs(const Vec& x, double t) const;
  double time_deriv(const Vec& x, double t) const;   // t ≠ s
  double time_slice_bound(const Vec& x) const;       // |ψ_t| ≤ ℓ·value(x,s)
};

BarrierSpec build_init_bump(const ProblemSpec& ps, const Vec& y, double eps,
                            double delta_hint = 0.0);
BarrierSpec build_init_indent(const ProblemSpec& ps, const Vec& y, double eps,
                              double delta_hint = 0.0);
BarrierSpec build_side_case1(const ProblemSpec& ps, BarrierKind kind, const Vec& y,
                             double s, double eps,
                             std::optional<double> lambda_bar_override = std::nullopt);
BarrierSpec build_side_case2(const ProblemSpec& ps, BarrierKind kind, const Vec& y,
                             double s, double eps, double beta_margin = 0.5);

/// Residual H(Dη,D²η) + χ(t)|Dη|^Γ - f(η) η_t at one region point (t ≠ s).
double barrier_residual(const ProblemSpec& ps, const BarrierSpec& bar, const Vec& x,
                        double t);

struct ResidualReport {
  std::string barrier;
  int samples = 0;
  int slice_samples = 0;
  int violations = 0;
  int resampled = 0;
  double min_residual = 0.0, max_residual = 0.0;
  double worst_margin = 0.0;  // most violating residual / max(1,|H|)
  Vec worst_x;
  double worst_t = 0.0;
  bool passed = true;
};

/// Samples the open region R (stratified in r and t), checks the residual
/// sign at relative tolerance tol·max(1,|H|); the t = s slice of the side
/// families is checked against the one-sided |ψ_t| bound.
ResidualReport verify_inequality(const ProblemSpec& ps, const BarrierSpec& bar,
                                 int samples, std::uint64_t rng_seed,
                                 double tol = 1e-8);

/// Total extension by the outside constant; verifies continuity across ∂R on
/// straddling pairs and throws NumericError beyond tol.
std::function<double(const Vec&, double)> extend_constant(const BarrierSpec& bar,
                                                          int straddle_pairs = 1000,
                                                          std::uint64_t rng_seed = 7,
                                                          double tol = 1e-6);

struct CompatReport {
  int samples = 0;
  int violations = 0;
  double worst_gap = 0.0;
  Vec worst_x;
  double worst_t = 0.0;
  double anchor_gap = 0.0;  // |value(anchor) - (h(anchor) ∓ 2ε)|
  bool passed = true;
};

/// bump ≤ h (indent ≥ h) on sampled P_T plus the 2ε anchor equality.
CompatReport boundary_compatibility(const ProblemSpec& ps, const BarrierSpec& bar,
                                    int samples);

struct StructureReport {
  double anchor_gap = 0.0;          // target: exact to 1e-9
  double continuity_gap = 0.0;      // target: 1e-6
  double bracket_low = 0.0, bracket_high = 0.0;  // observed value range
  double identity_gap = 0.0;        // ℓτ and b·δ^β relations, target 1e-12
  double part2_exponent_gap = 0.0;  // a - β(Γ-k) - (γ-Γ), Part II only
  bool region_contained = true;
  bool time_monotone = true;
  bool passed = true;
};

StructureReport check_structure(const ProblemSpec& ps, const BarrierSpec& bar,
                                int samples, std::uint64_t rng_seed);

/// Rescales the spatial coefficient (negative-control helper for the
/// corrupted-barrier test).
BarrierSpec with_scaled_b(BarrierSpec bar, double factor);

}  // namespace parabarrier
