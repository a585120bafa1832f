#pragma once

#include <functional>
#include <string>

namespace parabarrier {

/// Time-term coefficient f: C¹, positive on [domain_floor, ∞).
struct Nonlinearity {
  std::string name;
  std::function<double(double)> f, f_prime;
  double domain_floor = 0.0;
  bool increasing = true;
  // structural tags for closed-form detection (family + parameters)
  enum class Family { Constant, Power, Other } family = Family::Other;
  double coef = 1.0, expo = 0.0;  // Power: f(u) = coef * u^expo; Constant: coef

  static Nonlinearity constant(double c);
  static Nonlinearity power(double coef, double expo);
  static Nonlinearity trudinger(double p);  // f(u) = u^{p-2}
  /// Parses "constant:1", "power:3,2", "trudinger:3".
  static Nonlinearity from_key(const std::string& key);
};

struct ConcavityReport {
  bool concave = true;
  double worst_gap = 0.0;        // most negative midpoint-concavity slack
  double witness_a = 0.0, witness_b = 0.0;
  bool derivative_monotone = true;
  double worst_derivative_jump = 0.0;
};

/// Midpoint concavity of g = f^{1/(k-1)} on sampled pairs of [lo, hi], plus a
/// non-increasing check on g' computed through f_prime.
ConcavityReport check_concavity(const Nonlinearity& nl, double k, double lo, double hi,
                                int points, double tol = 1e-10);

}  // namespace parabarrier
