#include "parabarrier/nonlinearity.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "parabarrier/errors.hpp"

namespace parabarrier {

Nonlinearity Nonlinearity::constant(double c) {
  if (c <= 0.0) throw InputError("Nonlinearity::constant: c must be positive");
  Nonlinearity nl;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "constant(%g)", c);
  nl.name = buf;
  nl.f = [c](double) { return c; };
  nl.f_prime = [](double) { return 0.0; };
  nl.increasing = false;
  nl.family = Family::Constant;
  nl.coef = c;
  return nl;
}

Nonlinearity Nonlinearity::power(double coef, double expo) {
  if (coef <= 0.0) throw InputError("Nonlinearity::power: coef must be positive");
  if (expo < 0.0) throw InputError("Nonlinearity::power: expo must be >= 0");
  if (expo == 0.0) return constant(coef);
  Nonlinearity nl;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "power(%g,%g)", coef, expo);
  nl.name = buf;
  nl.f = [coef, expo](double u) { return coef * std::pow(u, expo); };
  nl.f_prime = [coef, expo](double u) { return coef * expo * std::pow(u, expo - 1.0); };
  nl.domain_floor = 0.0;
  nl.increasing = true;
  nl.family = Family::Power;
  nl.coef = coef;
  nl.expo = expo;
  return nl;
}

Nonlinearity Nonlinearity::trudinger(double p) {
  if (p < 2.0) throw InputError("Nonlinearity::trudinger: p must be >= 2");
  Nonlinearity nl = power(1.0, p - 2.0);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "trudinger(%g)", p);
  nl.name = buf;
  return nl;
}

Nonlinearity Nonlinearity::from_key(const std::string& key) {
  size_t colon = key.find(':');
  std::string base = key.substr(0, colon);
  std::vector<double> ps;
  if (colon != std::string::npos) {
    std::stringstream ss(key.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        ps.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw InputError("nonlinearity key has non-numeric parameter: " + key);
      }
    }
  }
  if (base == "constant") {
    if (ps.size() != 1) throw InputError("constant expects one parameter");
    return constant(ps[0]);
  }
  if (base == "power") {
    if (ps.size() != 2) throw InputError("power expects coef,exponent");
    return power(ps[0], ps[1]);
  }
  if (base == "trudinger") {
    if (ps.size() != 1) throw InputError("trudinger expects p");
    return trudinger(ps[0]);
  }
  throw InputError("unknown nonlinearity key: " + key);
}

ConcavityReport check_concavity(const Nonlinearity& nl, double k, double lo, double hi,
                                int points, double tol) {
  if (k <= 1.0) throw InputError("check_concavity: requires k > 1");
  if (!(hi > lo)) throw InputError("check_concavity: empty interval");
  if (points < 3) throw InputError("check_concavity: points must be >= 3");

  const double ex = 1.0 / (k - 1.0);
  auto g = [&](double u) { return std::pow(nl.f(u), ex); };
  auto gp = [&](double u) {
    // (f^{1/(k-1)})' = f' f^{(2-k)/(k-1)} / (k-1)
    return nl.f_prime(u) * std::pow(nl.f(u), (2.0 - k) / (k - 1.0)) / (k - 1.0);
  };

  ConcavityReport rep;
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * i / (points - 1);

  for (int i = 0; i < points; ++i) {
    for (int j = i + 1; j < points; ++j) {
      double a = xs[i], b = xs[j];
      double gap = g(0.5 * (a + b)) - 0.5 * (g(a) + g(b));
      if (gap < -tol && gap < rep.worst_gap) {
        rep.worst_gap = gap;
        rep.witness_a = a;
        rep.witness_b = b;
        rep.concave = false;
      }
    }
  }
  double prev = gp(xs[0]);
  for (int i = 1; i < points; ++i) {
    double cur = gp(xs[i]);
    if (cur > prev + tol) {
      rep.derivative_monotone = false;
      rep.worst_derivative_jump = std::max(rep.worst_derivative_jump, cur - prev);
    }
    prev = cur;
  }
  if (!rep.derivative_monotone) rep.concave = false;
  return rep;
}

}  // namespace parabarrier
