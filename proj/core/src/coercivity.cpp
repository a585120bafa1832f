#include "parabarrier/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "parabarrier/errors.hpp"

namespace parabarrier {

namespace {

constexpr double kNegTol = 1e-8;     // μ within ±1e-8 of 0 is "not negative"
constexpr double kBisectTol = 1e-6;  // λ₁, λ₀, λ̄ refinement
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Deterministic quasi-uniform unit directions: evenly spaced angles for n=2,
// Fibonacci sphere for n=3, seeded Gaussian draws above that.
std::vector<Vec> sphere_lattice(int n, int samples) {
  std::vector<Vec> dirs;
  dirs.reserve(samples);
  if (n == 2) {
    for (int j = 0; j < samples; ++j) {
      double th = 2.0 * M_PI * (j + 0.5) / samples;
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else if (n == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < samples; ++j) {
      double z = 1.0 - 2.0 * (j + 0.5) / samples;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = golden * j;
      dirs.push_back({r * std::cos(th), r * std::sin(th), z});
    }
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(samples));
    for (int j = 0; j < samples; ++j) dirs.push_back(random_unit_vector(rng, n));
  }
  return dirs;
}

using Objective = std::function<double(const Vec&)>;

// Gradient-free coordinate polish on the sphere; only accepts improvements.
Vec polish_on_sphere(const Objective& f, Vec e, bool minimize, int iters) {
  double best = f(e);
  double step = 0.5;
  const int n = static_cast<int>(e.size());
  for (int it = 0; it < iters && step > 1e-10; ++it) {
    bool improved = false;
    for (int i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec cand = e;
        cand[i] += sgn * step;
        cand = normalized(cand);
        double v = f(cand);
        if (minimize ? v < best : v > best) {
          best = v;
          e = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return e;
}

struct SearchOut {
  SphereExtrema ex;
  std::vector<Vec> polished;
};

SearchOut extrema_search(const Operator& op, double lambda,
                         const std::vector<Vec>& lattice, const std::vector<Vec>& pool,
                         int polish_iters) {
  auto g = [&](const Vec& e) { return op.eval(e, SymMat::pencil(e, lambda)); };
  auto gm = [&](const Vec& e) { return op.eval(e, SymMat::pencil_neg(e, lambda)); };

  SphereExtrema ex;
  bool first = true;
  auto absorb = [&](const Vec& e) {
    double a = g(e), b = gm(e);
    if (first) {
      ex.m_min = ex.m_max = a;
      ex.mu_min = ex.mu_max = b;
      ex.arg_m_min = ex.arg_m_max = e;
      ex.arg_mu_min = ex.arg_mu_max = e;
      first = false;
      return;
    }
    if (a < ex.m_min) { ex.m_min = a; ex.arg_m_min = e; }
    if (a > ex.m_max) { ex.m_max = a; ex.arg_m_max = e; }
    if (b < ex.mu_min) { ex.mu_min = b; ex.arg_mu_min = e; }
    if (b > ex.mu_max) { ex.mu_max = b; ex.arg_mu_max = e; }
  };
  for (const Vec& e : lattice) absorb(e);
  for (const Vec& e : pool) absorb(e);

  SearchOut out;
  if (polish_iters > 0) {
    Vec p1 = polish_on_sphere(g, ex.arg_m_min, true, polish_iters);
    Vec p2 = polish_on_sphere(g, ex.arg_m_max, false, polish_iters);
    Vec p3 = polish_on_sphere(gm, ex.arg_mu_min, true, polish_iters);
    Vec p4 = polish_on_sphere(gm, ex.arg_mu_max, false, polish_iters);
    for (const Vec& e : {p1, p2, p3, p4}) absorb(e);
    out.polished = {p1, p2, p3, p4};
  }
  out.ex = ex;
  return out;
}

}  // namespace

double SphereExtrema::m() const { return std::min(m_min, -mu_max); }
double SphereExtrema::mu() const { return std::max(m_max, -mu_min); }

SphereExtrema sphere_extrema(const Operator& op, double lambda, int samples,
                             int polish_iters) {
  if (samples < 8) throw InputError("sphere_extrema: samples must be >= 8");
  std::vector<Vec> lattice = sphere_lattice(op.dim, samples);
  return extrema_search(op, lambda, lattice, {}, polish_iters).ex;
}

SphereExtrema sphere_extrema_pooled(const Operator& op, double lambda,
                                    const std::vector<Vec>& lattice,
                                    const std::vector<Vec>& pool) {
  return extrema_search(op, lambda, lattice, pool, 0).ex;
}

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::CaseI: return "CaseI";
    case CaseTag::CaseII: return "CaseII";
    case CaseTag::Fails: return "Fails";
    case CaseTag::Inconclusive: return "Inconclusive";
  }
  return "?";
}

bool CoercivityProfile::covers(double lambda) const {
  return !grid.empty() && lambda >= lambda_lo() - 1e-12 && lambda <= lambda_hi() + 1e-12;
}

double CoercivityProfile::m_at(double lambda) const {
  if (!covers(lambda)) throw InputError("CoercivityProfile::m_at: lambda outside grid");
  for (const auto& p : grid)
    if (std::abs(p.lambda - lambda) <= 1e-12) return p.m;
  // m is non-increasing: the right neighbor underestimates m(λ)
  auto it = std::lower_bound(grid.begin(), grid.end(), lambda,
                             [](const ProfilePoint& p, double l) { return p.lambda < l; });
  if (it == grid.end()) return grid.back().m;
  return it->m;
}

double CoercivityProfile::mu_at(double lambda) const {
  if (!covers(lambda)) throw InputError("CoercivityProfile::mu_at: lambda outside grid");
  for (const auto& p : grid)
    if (std::abs(p.lambda - lambda) <= 1e-12) return p.mu;
  // μ is non-increasing: the left neighbor overestimates μ(λ)
  auto it = std::lower_bound(grid.begin(), grid.end(), lambda,
                             [](const ProfilePoint& p, double l) { return p.lambda < l; });
  if (it == grid.begin()) return grid.front().mu;
  return std::prev(it)->mu;
}

CoercivityProfile profile(const Operator& op, double lambda_min, double lambda_max,
                          int points, int samples, int polish_iters) {
  if (!(lambda_min < 1.0 && 1.0 < lambda_max))
    throw InputError("profile: require lambda_min < 1 < lambda_max");
  if (points < 16) throw InputError("profile: points must be >= 16");

  std::vector<Vec> lattice = sphere_lattice(op.dim, samples);

  std::vector<double> lams(points);
  for (int i = 0; i < points; ++i)
    lams[i] = lambda_min + (lambda_max - lambda_min) * i / (points - 1);

  // Pass 1: polish per λ, pooling the polished directions.
  std::vector<Vec> pool;
  for (double lam : lams) {
    SearchOut s = extrema_search(op, lam, lattice, pool, polish_iters);
    for (auto& e : s.polished) pool.push_back(std::move(e));
  }

  // Pass 2: evaluate every λ over the shared direction set. A fixed set keeps
  // m, μ exactly monotone in λ and m ≤ μ pointwise.
  CoercivityProfile prof;
  prof.operator_name = op.name;
  prof.sphere_samples = samples;
  prof.lambda1 = prof.lambda0 = prof.lambda_bar = kNaN;
  for (double lam : lams) {
    SphereExtrema ex = sphere_extrema_pooled(op, lam, lattice, pool);
    prof.grid.push_back({lam, ex.m(), ex.mu(), ex.m_min, ex.m_max, ex.mu_min, ex.mu_max});
  }

  auto m_of = [&](double lam) {
    return sphere_extrema_pooled(op, lam, lattice, pool).m();
  };
  auto mu_of = [&](double lam) {
    return sphere_extrema_pooled(op, lam, lattice, pool).mu();
  };
  auto bisect = [&](auto&& f, double lo, double hi) {
    // f(lo) > 0 >= f(hi); returns the crossing within kBisectTol
    while (hi - lo > kBisectTol) {
      double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  // λ₁: where m turns non-positive
  if (prof.grid.front().m > 0.0) {
    prof.lambda1 = prof.grid.back().lambda;
    for (size_t i = 1; i < prof.grid.size(); ++i) {
      if (prof.grid[i].m <= 0.0) {
        prof.lambda1 = bisect(m_of, prof.grid[i - 1].lambda, prof.grid[i].lambda);
        break;
      }
    }
  } else {
    prof.lambda1 = prof.grid.front().lambda;
  }

  // λ₀ / λ̄: where μ turns negative
  int first_neg = -1;
  for (size_t i = 0; i < prof.grid.size(); ++i) {
    if (prof.grid[i].mu < -kNegTol) {
      first_neg = static_cast<int>(i);
      break;
    }
  }
  if (first_neg > 0) {
    prof.lambda0 =
        bisect(mu_of, prof.grid[first_neg - 1].lambda, prof.grid[first_neg].lambda);
  } else if (first_neg == 0) {
    prof.lambda0 = prof.grid.front().lambda;
  }

  // Case (i) certificate: μ < 0 somewhere in (1,2). Prefer grid points, fall
  // back to a 0.01-step scan. Case (i) takes precedence over Case (ii).
  double case1_lambda = kNaN;
  for (const auto& p : prof.grid) {
    if (p.lambda > 1.0 && p.lambda < 2.0 && p.mu < -kNegTol) {
      case1_lambda = p.lambda;
      break;
    }
  }
  if (std::isnan(case1_lambda)) {
    for (int j = 1; j < 100; ++j) {
      double lam = 1.0 + 0.01 * j;
      if (lam >= 2.0) break;
      if (lam < lams.front() || lam > lams.back()) continue;
      if (mu_of(lam) < -kNegTol) {
        case1_lambda = lam;
        break;
      }
    }
  }

  if (!std::isnan(case1_lambda)) {
    prof.case_tag = CaseTag::CaseI;
    prof.lambda_bar = case1_lambda;
  } else if (first_neg >= 0) {
    prof.case_tag = CaseTag::CaseII;
    double crossing = first_neg == 0
                          ? prof.grid.front().lambda
                          : bisect(mu_of, prof.grid[first_neg - 1].lambda,
                                   prof.grid[first_neg].lambda);
    prof.lambda_bar = std::max(2.0, crossing);
  } else {
    // μ never negative on the grid: flat tail means genuinely non-coercive,
    // a still-decreasing tail means the grid was too narrow.
    size_t nn = prof.grid.size();
    double slope = prof.grid[nn - 1].mu - prof.grid[nn - 2].mu;
    bool flat = std::abs(slope) <= 1e-9 * std::max(1.0, std::abs(prof.grid[nn - 1].mu));
    prof.case_tag = flat ? CaseTag::Fails : CaseTag::Inconclusive;
  }
  return prof;
}

double m_exact(const Operator& op, double lambda, int samples, int polish) {
  return sphere_extrema(op, lambda, samples, polish).m();
}

double mu_exact(const Operator& op, double lambda, int samples, int polish) {
  return sphere_extrema(op, lambda, samples, polish).mu();
}

namespace {

struct ParsedKey {
  std::string base;
  std::vector<double> params;
};

ParsedKey parse_operator_name(const std::string& name) {
  ParsedKey out;
  size_t paren = name.find('(');
  out.base = name.substr(0, paren);
  if (paren != std::string::npos) {
    size_t close = name.find(')', paren);
    std::string inner = name.substr(paren + 1, close - paren - 1);
    size_t pos = 0;
    while (pos < inner.size()) {
      size_t comma = inner.find(',', pos);
      std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      out.params.push_back(std::stod(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return out;
}

void check_bound(CrosscheckReport& rep, double lambda, double value, double bound,
                 bool lower, double tol) {
  bool ok = lower ? value >= bound - tol : value <= bound + tol;
  if (!ok) {
    rep.violations.push_back({lambda, value, bound, lower ? "lower" : "upper"});
    rep.passed = false;
  }
}

}  // namespace

CrosscheckReport crosscheck_closed_form(const CoercivityProfile& prof, const Operator& op,
                                        double tol) {
  CrosscheckReport rep;
  rep.op_name = op.name;
  ParsedKey key = parse_operator_name(op.name);
  const double n = static_cast<double>(op.dim);

  auto exact_pair = [&](auto&& m_cf, auto&& mu_cf) {
    for (const auto& p : prof.grid) {
      ++rep.points_checked;
      double mc = m_cf(p.lambda), muc = mu_cf(p.lambda);
      if (std::abs(p.m - mc) > tol) {
        rep.violations.push_back({p.lambda, p.m, mc, "m==closed"});
        rep.passed = false;
      }
      if (std::abs(p.mu - muc) > tol) {
        rep.violations.push_back({p.lambda, p.mu, muc, "mu==closed"});
        rep.passed = false;
      }
    }
  };

  if (key.base == "inf_laplacian") {
    auto cf = [](double l) { return 1.0 - l; };
    exact_pair(cf, cf);
  } else if (key.base == "p_laplacian_variant") {
    double a = key.params.at(1);
    auto cf = [n, a](double l) { return n + a - l * (1.0 + a); };
    exact_pair(cf, cf);
  } else if (key.base == "pucci_plus" || key.base == "pucci_minus") {
    double th = key.params.at(0), vth = key.params.at(1);
    auto m_cf = [n, th, vth](double l) {
      return l <= 1.0 ? th * (n - l) : th * (n - 1.0) - vth * (l - 1.0);
    };
    auto mu_cf = [n, th, vth](double l) {
      return l <= 1.0 ? vth * (n - l) : vth * (n - 1.0) - th * (l - 1.0);
    };
    exact_pair(m_cf, mu_cf);
  } else if (key.base == "pseudo_p") {
    double p = key.params.at(0);
    for (const auto& pt : prof.grid) {
      if (pt.lambda < 0.0) continue;  // Hölder bounds are stated for λ ≥ 0
      ++rep.points_checked;
      double lower = pt.lambda <= 1.0
                         ? (1.0 - pt.lambda) * std::pow(n, -std::abs(2.0 - p) / 2.0)
                         : (1.0 - pt.lambda) * n;
      double upper = (pt.lambda <= n ? 1.0 : std::pow(n, -p / 2.0)) * (n - pt.lambda);
      check_bound(rep, pt.lambda, pt.m, lower, true, tol);
      check_bound(rep, pt.lambda, pt.mu, upper, false, tol);
    }
  } else if (key.base == "weighted_inf") {
    double q = key.params.at(0);
    double nq2 = std::pow(n, q / 2.0);
    for (const auto& pt : prof.grid) {
      if (pt.lambda < 0.0) continue;
      ++rep.points_checked;
      double lower = pt.lambda <= 1.0 ? (1.0 - pt.lambda) * std::pow(n, -q)
                                      : (1.0 - pt.lambda);
      double upper = (pt.lambda <= nq2 ? 1.0 : 1.0 / nq2) * (1.0 - pt.lambda / nq2);
      check_bound(rep, pt.lambda, pt.m, lower, true, tol);
      check_bound(rep, pt.lambda, pt.mu, upper, false, tol);
    }
  } else if (op.has_profile()) {
    // Generic operator with an e-independent profile: compare against it.
    Vec e(op.dim, 0.0);
    e[0] = 1.0;
    auto cf = [&](double l) { return op.lambda_profile(l, e); };
    exact_pair(cf, cf);
  } else {
    throw InputError("crosscheck_closed_form: no closed form known for " + op.name);
  }
  return rep;
}

}  // namespace parabarrier
