#include "parabarrier/operators.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "parabarrier/errors.hpp"

namespace parabarrier {

namespace {

constexpr double kGradientFloor = 1e-14;  // |p| below this kills |p|-power terms
constexpr int kMaxWitnesses = 8;

void record(PropertyCheckReport& rep, double magnitude, const std::string& detail) {
  ++rep.violations;
  rep.worst = std::max(rep.worst, magnitude);
  if (static_cast<int>(rep.witnesses.size()) < kMaxWitnesses)
    rep.witnesses.push_back({magnitude, detail});
  rep.passed = false;
}

}  // namespace

double evaluate(const Operator& op, const Vec& p, const SymMat& X) {
  if (static_cast<int>(p.size()) != op.dim || X.dim() != op.dim)
    throw InputError("evaluate: dimension mismatch for operator " + op.name);
  return op.eval(p, X);
}

double evaluate(const Operator& op, const Vec& p, const std::vector<double>& x_full,
                double sym_tol) {
  SymMat X = SymMat::from_full(op.dim, x_full, sym_tol);
  return evaluate(op, p, X);
}

Operator dual(const Operator& op) {
  Operator d;
  d.name = "dual(" + op.name + ")";
  d.dim = op.dim;
  d.k1 = op.k1;
  d.k2 = op.k2;
  auto base = op.eval;
  d.eval = [base](const Vec& p, const SymMat& X) { return -base(p, -X); };
  // Closed-form dual profile: Ĥ(e, I-λe⊗e) = -H(e, λe⊗e - I); only available
  // through eval, so the dual carries no profile.
  return d;
}

Operator make_inf_laplacian(int dim) {
  Operator op;
  op.name = "inf_laplacian";
  op.dim = dim;
  op.k1 = 2.0;
  op.k2 = 1;
  op.eval = [](const Vec& p, const SymMat& X) { return quad_form(p, X); };
  op.lambda_profile = [](double lambda, const Vec&) { return 1.0 - lambda; };
  return op;
}

Operator make_p_laplacian_variant(double q, double a, int dim) {
  if (q < 0.0) throw ConstructionError("p_laplacian_variant: q must be >= 0");
  if (a <= -1.0) throw ConstructionError("p_laplacian_variant: a must be > -1");
  Operator op;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "p_laplacian_variant(%g,%g)", q, a);
  op.name = buf;
  op.dim = dim;
  op.k1 = q;
  op.k2 = 1;
  op.eval = [q, a](const Vec& p, const SymMat& X) {
    double pn = norm(p);
    if (pn <= kGradientFloor) return 0.0;
    double t = std::pow(pn, q) * X.trace();
    // |p|^{q-2} Δ∞ = |p|^q êᵀXê, continuous at p = 0 for q > 0
    double infl = quad_form(p, X) / (pn * pn);
    return t + a * std::pow(pn, q) * infl;
  };
  op.lambda_profile = [a, dim](double lambda, const Vec&) {
    return dim + a - lambda * (1.0 + a);
  };
  return op;
}

Operator make_pseudo_p(double p, double q, int dim) {
  if (p < 0.0 || q < 0.0) throw ConstructionError("pseudo_p: p, q must be >= 0");
  Operator op;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "pseudo_p(%g,%g)", p, q);
  op.name = buf;
  op.dim = dim;
  op.k1 = p + q;
  op.k2 = 1;
  op.eval = [p, q](const Vec& g, const SymMat& X) {
    double gn = norm(g);
    if (gn <= kGradientFloor) return 0.0;
    double s = 0.0;
    for (int i = 0; i < X.dim(); ++i) s += std::pow(std::abs(g[i]), p) * X(i, i);
    return std::pow(gn, q) * s;
  };
  op.lambda_profile = [p](double lambda, const Vec& e) {
    double sp = 0.0, sp2 = 0.0;
    for (double ei : e) {
      double a = std::abs(ei);
      sp += std::pow(a, p);
      sp2 += std::pow(a, p + 2.0);
    }
    return sp - lambda * sp2;
  };
  return op;
}

Operator make_weighted_inf(double q, int dim) {
  if (q < 0.0) throw ConstructionError("weighted_inf: q must be >= 0");
  Operator op;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "weighted_inf(%g)", q);
  op.name = buf;
  op.dim = dim;
  op.k1 = 2.0 * q + 2.0;
  op.k2 = 1;
  op.eval = [q](const Vec& g, const SymMat& X) {
    // w_i = |g_i|^q g_i, value = wᵀ X w
    Vec w(g.size());
    for (size_t i = 0; i < g.size(); ++i) w[i] = std::pow(std::abs(g[i]), q) * g[i];
    return quad_form(w, X);
  };
  op.lambda_profile = [q](double lambda, const Vec& e) {
    double s1 = 0.0, s2 = 0.0;
    for (double ei : e) {
      double a = std::abs(ei);
      s1 += std::pow(a, 2.0 * q + 2.0);
      s2 += std::pow(a, q + 2.0);
    }
    return s1 - lambda * s2 * s2;
  };
  return op;
}

namespace {

Operator make_pucci(double theta, double vartheta, double q, int dim, bool plus) {
  if (theta <= 0.0 || theta > vartheta)
    throw ConstructionError("pucci: require 0 < theta <= vartheta");
  if (q < 0.0) throw ConstructionError("pucci: q must be >= 0");
  Operator op;
  char buf[80];
  std::snprintf(buf, sizeof(buf), "pucci_%s(%g,%g,%g)", plus ? "plus" : "minus",
                theta, vartheta, q);
  op.name = buf;
  op.dim = dim;
  op.k1 = q;
  op.k2 = 1;
  op.eval = [theta, vartheta, q, plus](const Vec& p, const SymMat& X) {
    double pn = norm(p);
    double w = (q == 0.0) ? 1.0 : (pn <= kGradientFloor ? 0.0 : std::pow(pn, q));
    if (w == 0.0) return 0.0;
    std::vector<double> ev = jacobi_eigenvalues(X);
    double pos = 0.0, neg = 0.0;
    for (double a : ev) (a >= 0.0 ? pos : neg) += a;
    double val = plus ? vartheta * pos + theta * neg : theta * pos + vartheta * neg;
    return w * val;
  };
  // eigenvalues of I - λ e⊗e: 1 (n-1 times) and 1-λ
  op.lambda_profile = [theta, vartheta, dim, plus](double lambda, const Vec&) {
    double n = static_cast<double>(dim);
    if (plus)
      return lambda <= 1.0 ? vartheta * (n - lambda)
                           : vartheta * (n - 1.0) + theta * (1.0 - lambda);
    return lambda <= 1.0 ? theta * (n - lambda)
                         : theta * (n - 1.0) + vartheta * (1.0 - lambda);
  };
  return op;
}

}  // namespace

Operator make_pucci_plus(double theta, double vartheta, double q, int dim) {
  return make_pucci(theta, vartheta, q, dim, true);
}

Operator make_pucci_minus(double theta, double vartheta, double q, int dim) {
  return make_pucci(theta, vartheta, q, dim, false);
}

std::vector<Operator> zoo(int dim) {
  return {
      make_inf_laplacian(dim),
      make_p_laplacian_variant(2.0, 2.0, dim),  // p-Laplacian, p = 4
      make_pseudo_p(3.0, 0.0, dim),
      make_weighted_inf(2.0, dim),
      make_pucci_plus(1.0, 2.0, 0.0, dim),
      make_pucci_minus(1.0, 3.0, 1.0, dim),
  };
}

namespace {

std::vector<double> parse_params(const std::string& key, size_t paren) {
  std::vector<double> out;
  if (paren == std::string::npos) return out;
  size_t close = key.find(')', paren);
  if (close == std::string::npos) throw InputError("operator key missing ')': " + key);
  std::string inner = key.substr(paren + 1, close - paren - 1);
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw InputError("operator key has non-numeric parameter: " + key);
    }
  }
  return out;
}

}  // namespace

Operator operator_from_key(const std::string& key, int dim) {
  size_t paren = key.find('(');
  std::string base = key.substr(0, paren);
  std::vector<double> ps = parse_params(key, paren);
  auto want = [&](size_t n) {
    if (ps.size() != n)
      throw InputError("operator key " + base + " expects " + std::to_string(n) +
                       " parameter(s)");
  };
  if (base == "inf_laplacian") {
    want(0);
    return make_inf_laplacian(dim);
  }
  if (base == "p_laplacian_variant") {
    want(2);
    return make_p_laplacian_variant(ps[0], ps[1], dim);
  }
  if (base == "pseudo_p") {
    want(2);
    return make_pseudo_p(ps[0], ps[1], dim);
  }
  if (base == "weighted_inf") {
    want(1);
    return make_weighted_inf(ps[0], dim);
  }
  if (base == "pucci_plus") {
    want(3);
    return make_pucci_plus(ps[0], ps[1], ps[2], dim);
  }
  if (base == "pucci_minus") {
    want(3);
    return make_pucci_minus(ps[0], ps[1], ps[2], dim);
  }
  throw InputError("unknown operator key: " + key);
}

PropertyCheckReport check_monotonicity(const Operator& op, int samples,
                                       std::uint64_t rng_seed, double tol) {
  if (samples < 1) throw InputError("check_monotonicity: samples must be >= 1");
  PropertyCheckReport rep{op.name, "monotonicity", samples, 0, 0.0, {}, true};
  std::mt19937_64 rng(rng_seed);
  for (int s = 0; s < samples; ++s) {
    Vec p = random_vector(rng, op.dim);
    SymMat X = random_symmetric(rng, op.dim);
    SymMat W = random_psd(rng, op.dim);
    double lo = op.eval(p, X);
    double hi = op.eval(p, X + W);
    if (hi < lo - tol) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "sample %d: H(p,X+W)-H(p,X) = %.3e", s, hi - lo);
      record(rep, lo - hi, buf);
    }
  }
  return rep;
}

PropertyCheckReport check_homogeneity(const Operator& op, int samples,
                                      std::uint64_t rng_seed, double rel_tol) {
  if (samples < 1) throw InputError("check_homogeneity: samples must be >= 1");
  PropertyCheckReport rep{op.name, "homogeneity", samples, 0, 0.0, {}, true};
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> u_sign(-3.0, 3.0);
  std::uniform_real_distribution<double> u_pos(0.05, 4.0);
  for (int s = 0; s < samples; ++s) {
    Vec p = random_vector(rng, op.dim);
    SymMat X = random_symmetric(rng, op.dim);
    double base = op.eval(p, X);
    // gradient scaling, θ of either sign
    double th = u_sign(rng);
    if (std::abs(th) < 1e-3) th = 1.0;
    double lhs = op.eval(th * p, X);
    double rhs = std::pow(std::abs(th), op.k1) * base;
    double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    if (err > rel_tol) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "sample %d: p-scaling rel err %.3e", s, err);
      record(rep, err, buf);
    }
    // Hessian scaling, θ > 0
    double tx = u_pos(rng);
    double lhs2 = op.eval(p, tx * X);
    double rhs2 = std::pow(tx, static_cast<double>(op.k2)) * base;
    double err2 = std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2));
    if (err2 > rel_tol) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "sample %d: X-scaling rel err %.3e", s, err2);
      record(rep, err2, buf);
    }
  }
  return rep;
}

PropertyCheckReport check_zero_matrix(const Operator& op, int samples,
                                      std::uint64_t rng_seed, double tol) {
  PropertyCheckReport rep{op.name, "zero_matrix", samples, 0, 0.0, {}, true};
  std::mt19937_64 rng(rng_seed);
  SymMat O = SymMat::zero(op.dim);
  for (int s = 0; s < samples; ++s) {
    Vec p = random_vector(rng, op.dim, -3.0, 3.0);
    double v = op.eval(p, O);
    if (std::abs(v) > tol) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "sample %d: H(p,O) = %.3e", s, v);
      record(rep, std::abs(v), buf);
    }
  }
  return rep;
}

PropertyCheckReport check_profile_consistency(const Operator& op, double lambda_lo,
                                              double lambda_hi, int lambda_points,
                                              int directions, std::uint64_t rng_seed,
                                              double tol) {
  if (!op.has_profile())
    throw InputError("check_profile_consistency: operator has no lambda_profile");
  PropertyCheckReport rep{op.name, "profile_consistency",
                          lambda_points * directions, 0, 0.0, {}, true};
  std::mt19937_64 rng(rng_seed);
  for (int d = 0; d < directions; ++d) {
    Vec e = random_unit_vector(rng, op.dim);
    for (int i = 0; i < lambda_points; ++i) {
      double lam = lambda_lo + (lambda_hi - lambda_lo) * i /
                                   std::max(1, lambda_points - 1);
      double num = op.eval(e, SymMat::pencil(e, lam));
      double cf = op.lambda_profile(lam, e);
      double err = std::abs(num - cf) / std::max(1.0, std::abs(cf));
      if (err > tol) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "lambda %.4f: rel err %.3e", lam, err);
        record(rep, err, buf);
      }
    }
  }
  return rep;
}

}  // namespace parabarrier
