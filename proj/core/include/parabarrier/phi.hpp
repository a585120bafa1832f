#pragma once

#include <optional>
#include <vector>

#include "parabarrier/nonlinearity.hpp"

namespace parabarrier {

enum class PhiForm { Exp, Linear, Power, Numeric };

/// Solution of dφ/dτ = f(φ)^{1/(k-1)}, strictly increasing. Stored on a
/// uniform grid; queries interpolate with monotone cubic Hermite pieces and
/// φ⁻¹ inverts by bisection with local refinement.
struct PhiSolution {
  std::vector<double> tau_grid, phi_grid, phi_prime_grid;
  double k = 2.0;
  Nonlinearity nl;
  PhiForm closed_form_tag = PhiForm::Numeric;
  bool truncated = false;
  double truncation_tau = 0.0;

  double tau_lo() const { return tau_grid.front(); }
  double tau_hi() const { return tau_grid.back(); }
  double range_lo() const { return phi_grid.front(); }
  double range_hi() const { return phi_grid.back(); }

  double phi(double tau) const;
  double phi_prime(double tau) const;
  double phi_inverse(double u) const;          // tolerance 1e-10
  double phipp_over_phip(double tau) const;    // chain rule through f, f'

  /// Closed-form value for the detected family (Exp/Linear/Power); throws for
  /// Numeric. Used by tests to cross-check the integrator.
  double closed_form(double tau) const;

  /// The canonical change of variables for k = 1, f ≡ 1: any increasing
  /// positive C² function works, φ = e^τ is the default, represented exactly
  /// on a grid over [lo, hi].
  static PhiSolution exact_exp(double lo, double hi, int steps);
};

/// Classical 4th-order one-step integration of the defining ODE on a uniform
/// grid over [tau_lo, tau_hi] with φ(tau_lo) = phi0. Integration halts with
/// truncated status if φ exits the domain of f.
PhiSolution solve_phi(const Nonlinearity& nl, double k, double phi0, double tau_lo,
                      double tau_hi, int steps);

}  // namespace parabarrier
