#include "parabarrier/phi.hpp"

#include <algorithm>
#include <cmath>

#include "parabarrier/errors.hpp"

namespace parabarrier {

namespace {

// Cubic Hermite on [x0, x1] with values y0, y1 and slopes d0, d1.
double hermite(double x, double x0, double x1, double y0, double y1, double d0,
               double d1) {
  double h = x1 - x0;
  double t = (x - x0) / h;
  double t2 = t * t, t3 = t2 * t;
  return y0 * (2 * t3 - 3 * t2 + 1) + h * d0 * (t3 - 2 * t2 + t) +
         y1 * (-2 * t3 + 3 * t2) + h * d1 * (t3 - t2);
}

}  // namespace

double PhiSolution::phi(double tau) const {
  if (tau < tau_lo() - 1e-12 || tau > tau_hi() + 1e-12)
    throw InputError("PhiSolution::phi: tau outside the solved span");
  tau = std::clamp(tau, tau_lo(), tau_hi());
  size_t n = tau_grid.size();
  double h = (tau_hi() - tau_lo()) / static_cast<double>(n - 1);
  size_t i = std::min(n - 2, static_cast<size_t>(std::max(0.0, (tau - tau_lo()) / h)));
  return hermite(tau, tau_grid[i], tau_grid[i + 1], phi_grid[i], phi_grid[i + 1],
                 phi_prime_grid[i], phi_prime_grid[i + 1]);
}

double PhiSolution::phi_prime(double tau) const {
  if (k <= 1.0) {
    if (closed_form_tag == PhiForm::Exp) return phi(tau);  // φ' = φ = e^τ
    throw InputError("PhiSolution::phi_prime: k <= 1 without exp form");
  }
  double ex = 1.0 / (k - 1.0);
  return std::pow(nl.f(phi(tau)), ex);
}

double PhiSolution::phi_inverse(double u) const {
  if (u < range_lo() - 1e-9 || u > range_hi() + 1e-9)
    throw InputError("PhiSolution::phi_inverse: value outside the covered range");
  u = std::clamp(u, range_lo(), range_hi());
  // φ is strictly increasing: bracket on the grid, then bisect the cubic.
  auto it = std::lower_bound(phi_grid.begin(), phi_grid.end(), u);
  size_t i = it == phi_grid.begin() ? 0 : (it - phi_grid.begin()) - 1;
  i = std::min(i, tau_grid.size() - 2);
  double lo = tau_grid[i], hi = tau_grid[i + 1];
  double flo = phi_grid[i] - u;
  for (int iter = 0; iter < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++iter) {
    double mid = 0.5 * (lo + hi);
    double fm = phi(mid) - u;
    if ((fm >= 0.0) == (flo >= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double PhiSolution::phipp_over_phip(double tau) const {
  if (k <= 1.0) {
    if (closed_form_tag == PhiForm::Exp) return 1.0;  // φ = e^τ
    throw InputError("PhiSolution::phipp_over_phip: k <= 1 without exp form");
  }
  double u = phi(tau);
  return nl.f_prime(u) * std::pow(nl.f(u), (2.0 - k) / (k - 1.0)) / (k - 1.0);
}

double PhiSolution::closed_form(double tau) const {
  double t = tau - tau_lo();
  double phi0 = phi_grid.front();
  double ex = 1.0 / (k - 1.0);
  switch (closed_form_tag) {
    case PhiForm::Linear:
      return phi0 + std::pow(nl.coef, ex) * t;
    case PhiForm::Exp:
      if (k <= 1.0) return phi0 * std::exp(t);
      return phi0 * std::exp(std::pow(nl.coef, ex) * t);
    case PhiForm::Power: {
      double s = 1.0 - nl.expo / (k - 1.0);
      double c = std::pow(nl.coef, ex);
      return std::pow(std::pow(phi0, s) + s * c * t, 1.0 / s);
    }
    case PhiForm::Numeric:
      break;
  }
  throw InputError("PhiSolution::closed_form: no closed form detected");
}

PhiSolution PhiSolution::exact_exp(double lo, double hi, int steps) {
  PhiSolution s;
  s.k = 1.0;
  s.nl = Nonlinearity::constant(1.0);
  s.closed_form_tag = PhiForm::Exp;
  s.tau_grid.resize(steps + 1);
  s.phi_grid.resize(steps + 1);
  s.phi_prime_grid.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double t = lo + (hi - lo) * i / steps;
    s.tau_grid[i] = t;
    s.phi_grid[i] = std::exp(t);
    s.phi_prime_grid[i] = std::exp(t);
  }
  return s;
}

PhiSolution solve_phi(const Nonlinearity& nl, double k, double phi0, double tau_lo,
                      double tau_hi, int steps) {
  if (k <= 1.0) throw InputError("solve_phi: requires k > 1");
  if (!(tau_hi > tau_lo)) throw InputError("solve_phi: empty tau span");
  if (steps < 2) throw InputError("solve_phi: steps must be >= 2");
  if (phi0 <= nl.domain_floor)
    throw InputError("solve_phi: phi0 must lie above the domain floor of f");
  if (nl.f(phi0) <= 0.0) throw InputError("solve_phi: f(phi0) must be positive");

  const double ex = 1.0 / (k - 1.0);
  auto ok = [&](double u) { return u > nl.domain_floor && nl.f(u) > 0.0; };
  auto rhs = [&](double u) { return std::pow(nl.f(u), ex); };

  PhiSolution sol;
  sol.k = k;
  sol.nl = nl;
  switch (nl.family) {
    case Nonlinearity::Family::Constant:
      sol.closed_form_tag = PhiForm::Linear;
      break;
    case Nonlinearity::Family::Power:
      sol.closed_form_tag = std::abs(nl.expo - (k - 1.0)) < 1e-12 ? PhiForm::Exp
                                                                  : PhiForm::Power;
      break;
    default:
      sol.closed_form_tag = PhiForm::Numeric;
  }

  double h = (tau_hi - tau_lo) / steps;
  double u = phi0;
  sol.tau_grid.push_back(tau_lo);
  sol.phi_grid.push_back(u);
  sol.phi_prime_grid.push_back(rhs(u));
  for (int i = 0; i < steps; ++i) {
    double k1 = rhs(u);
    double u2 = u + 0.5 * h * k1;
    if (!ok(u2)) { sol.truncated = true; break; }
    double k2 = rhs(u2);
    double u3 = u + 0.5 * h * k2;
    if (!ok(u3)) { sol.truncated = true; break; }
    double k3 = rhs(u3);
    double u4 = u + h * k3;
    if (!ok(u4)) { sol.truncated = true; break; }
    double k4 = rhs(u4);
    double next = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!ok(next)) { sol.truncated = true; break; }
    u = next;
    sol.tau_grid.push_back(tau_lo + (i + 1) * h);
    sol.phi_grid.push_back(u);
    sol.phi_prime_grid.push_back(rhs(u));
  }
  if (sol.truncated) sol.truncation_tau = sol.tau_grid.back();
  if (sol.tau_grid.size() < 2)
    throw NumericError("solve_phi: integration left the domain of f immediately");
  return sol;
}

}  // namespace parabarrier
