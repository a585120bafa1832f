#pragma once

#include <optional>

#include "parabarrier/boundary_data.hpp"
#include "parabarrier/coercivity.hpp"
#include "parabarrier/domain.hpp"
#include "parabarrier/nonlinearity.hpp"
#include "parabarrier/operators.hpp"

namespace parabarrier {

/// Coefficient χ(t) with an exact sup bound B₀.
struct ChiSpec {
  enum class Kind { Constant, Sinusoid };
  Kind kind = Kind::Constant;
  double value = 0.0;      // constant
  double amplitude = 0.0;  // sinusoid
  double period = 1.0;

  static ChiSpec constant(double v);
  static ChiSpec sinusoid(double amplitude, double period);
  double operator()(double t) const;
  double sup_abs() const;
};

/// Full problem instance H(Du,D²u) + χ(t)|Du|^Γ - f(u) u_t = 0 on domain×(0,T)
/// with data h on the parabolic boundary. finalize() derives ϑ, M, ω, ν, B₀.
struct ProblemSpec {
  Operator op;
  CoercivityProfile coer;
  std::optional<Nonlinearity> nl;  // nullopt means f ≡ 1 (Part II)
  double Gamma = 1.0;
  ChiSpec chi;
  double T = 1.0;
  Domain domain;
  BoundaryData h;
  std::optional<double> rho0;  // exterior-ball radius override

  // derived by finalize()
  double theta_inf = 0.0;  // ϑ = inf_{P_T} h
  double M_sup = 0.0;      // M = sup_{P_T} h
  double omega = 1.0;      // inf f on [ϑ/2, 2M]
  double nu = 1.0;         // sup f on [ϑ/2, 2M]
  double B0 = 0.0;         // sup |χ|
  bool finalized = false;

  bool part_one() const { return nl.has_value(); }
  double k() const { return op.k(); }
  double gamma() const { return op.gamma(); }
  double f(double u) const { return nl ? nl->f(u) : 1.0; }

  /// Samples h over P_T and f over [ϑ/2, 2M]; throws if ϑ ≤ 0 for Part I.
  void finalize(int boundary_samples = 768, int bottom_samples = 192,
                int time_samples = 192);
  /// Default ε = min(0.5, ϑ/8), which keeps ϑ/2 < ϑ - 2ε.
  double default_eps() const;
};

/// Oscillation window around an anchor (y, s) on the parabolic boundary:
/// largest (δ₀, τ₀) found by expanding-window search with
/// |h - h(y,s)| ≤ eps on P_T ∩ (B_{δ₀}(y) × [s-2τ₀, s+2τ₀]). For interior
/// anchors at s = 0, δ₀ is also capped by dist(y, ∂Ω) and τ₀ = T.
struct OscWindow {
  double delta0 = 0.0;
  double tau0 = 0.0;
};
OscWindow oscillation_window(const ProblemSpec& ps, const Vec& y, double s, double eps);

}  // namespace parabarrier
