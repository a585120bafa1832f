#include <gtest/gtest.h>

#include <cmath>

#include "parabarrier/coercivity.hpp"
#include "parabarrier/errors.hpp"

using namespace parabarrier;

namespace {

// Brute-force oracle: dense lattice evaluation with no polish. Reported
// extrema must bracket (never be tighter than) what any sample shows.
SphereExtrema brute_force(const Operator& op, double lambda, int n) {
  SphereExtrema ex;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * M_PI * i / n;
    Vec e{std::cos(th), std::sin(th)};
    double a = op.eval(e, SymMat::pencil(e, lambda));
    double b = op.eval(e, SymMat::pencil_neg(e, lambda));
    if (first) {
      ex.m_min = ex.m_max = a;
      ex.mu_min = ex.mu_max = b;
      first = false;
    }
    ex.m_min = std::min(ex.m_min, a);
    ex.m_max = std::max(ex.m_max, a);
    ex.mu_min = std::min(ex.mu_min, b);
    ex.mu_max = std::max(ex.mu_max, b);
  }
  return ex;
}

}  // namespace

TEST(Coercivity, InfLaplacianExtremaAtZero) {
  Operator op = make_inf_laplacian(2);
  SphereExtrema ex = sphere_extrema(op, 0.0, 256, 10);
  EXPECT_NEAR(ex.m_min, 1.0, 1e-12);
  EXPECT_NEAR(ex.m_max, 1.0, 1e-12);
  EXPECT_NEAR(ex.mu_min, -1.0, 1e-12);
  EXPECT_NEAR(ex.mu_max, -1.0, 1e-12);
}

TEST(Coercivity, PucciPlusMminAtZero) {
  // m_min(0) = ϑ̂ n = 4 for θ=1, ϑ̂=2, n=2
  Operator op = make_pucci_plus(1.0, 2.0, 0.0, 2);
  SphereExtrema ex = sphere_extrema(op, 0.0, 128, 10);
  EXPECT_NEAR(ex.m_min, 4.0, 1e-10);
}

TEST(Coercivity, PseudoPMminAtZeroIsOne) {
  // Σ e_i² = 1 on the sphere
  Operator op = make_pseudo_p(2.0, 0.0, 2);
  SphereExtrema ex = sphere_extrema(op, 0.0, 512, 25);
  EXPECT_NEAR(ex.m_min, 1.0, 1e-9);
  EXPECT_NEAR(ex.m_max, 1.0, 1e-9);
}

TEST(Coercivity, ExtremaBracketBruteForce) {
  // reported min ≤ value at every sampled direction ≤ reported max
  for (const Operator& op : zoo(2)) {
    for (double lam : {-2.0, 0.0, 0.7, 1.3, 2.5}) {
      SphereExtrema ex = sphere_extrema(op, lam, 2048, 40);
      SphereExtrema bf = brute_force(op, lam, 9931);
      EXPECT_LE(ex.m_min, bf.m_min + 1e-12) << op.name << " λ=" << lam;
      EXPECT_GE(ex.m_max, bf.m_max - 1e-12) << op.name;
      EXPECT_LE(ex.mu_min, bf.mu_min + 1e-12) << op.name;
      EXPECT_GE(ex.mu_max, bf.mu_max - 1e-12) << op.name;
      // and the polished search comes close to the dense oracle
      EXPECT_NEAR(ex.m_min, bf.m_min, 1e-5 * std::max(1.0, std::abs(bf.m_min)));
      EXPECT_NEAR(ex.m_max, bf.m_max, 1e-5 * std::max(1.0, std::abs(bf.m_max)));
    }
  }
}

TEST(Coercivity, InfLaplacianProfileClosedForm) {
  Operator op = make_inf_laplacian(2);
  CoercivityProfile prof = profile(op, -4.0, 4.0, 33, 512, 20);
  for (const auto& p : prof.grid) {
    EXPECT_NEAR(p.m, 1.0 - p.lambda, 1e-6);
    EXPECT_NEAR(p.mu, 1.0 - p.lambda, 1e-6);
  }
  EXPECT_NEAR(prof.lambda1, 1.0, 2e-6);
  EXPECT_NEAR(prof.lambda0, 1.0, 2e-6);
  EXPECT_EQ(prof.case_tag, CaseTag::CaseI);
  EXPECT_GT(prof.lambda_bar, 1.0);
  EXPECT_LT(prof.lambda_bar, 2.0);
  EXPECT_LT(prof.mu_at(prof.lambda_bar), 0.0);
}

TEST(Coercivity, PucciMinusCaseTwoLambdaBarFour) {
  // μ(λ) = ϑ̂(n-1) - θ(λ-1) = 4 - λ for λ ≥ 1: crossing at 4
  Operator op = make_pucci_minus(1.0, 3.0, 2.0, 2);
  CoercivityProfile prof = profile(op, -1.0, 6.0, 29, 256, 10);
  EXPECT_EQ(prof.case_tag, CaseTag::CaseII);
  EXPECT_NEAR(prof.lambda_bar, 4.0, 1e-3);
  EXPECT_NEAR(prof.lambda0, 4.0, 1e-3);
  for (const auto& p : prof.grid) {
    double m_cf = p.lambda <= 1.0 ? 2.0 - p.lambda : 1.0 - 3.0 * (p.lambda - 1.0);
    double mu_cf = p.lambda <= 1.0 ? 3.0 * (2.0 - p.lambda) : 4.0 - p.lambda;
    EXPECT_NEAR(p.m, m_cf, 1e-9) << p.lambda;
    EXPECT_NEAR(p.mu, mu_cf, 1e-9) << p.lambda;
  }
}

TEST(Coercivity, NonCoerciveOperatorFails) {
  // H = |p|^{k1} max(trace X, 0) has μ(λ) ≥ 0 flattening at 0
  Operator op;
  op.name = "positive_part_trace";
  op.dim = 2;
  op.k1 = 1.0;
  op.k2 = 1;
  op.eval = [](const Vec& p, const SymMat& x) {
    return norm(p) * std::max(x.trace(), 0.0);
  };
  CoercivityProfile prof = profile(op, -1.0, 8.0, 19, 128, 10);
  EXPECT_EQ(prof.case_tag, CaseTag::Fails);
}

TEST(Coercivity, NarrowGridInconclusive) {
  // Pucci H⁻ with crossing at 4, grid stops at 3: sign change unobserved
  Operator op = make_pucci_minus(1.0, 3.0, 0.0, 2);
  CoercivityProfile prof = profile(op, -1.0, 3.0, 17, 128, 10);
  EXPECT_EQ(prof.case_tag, CaseTag::Inconclusive);
  EXPECT_TRUE(std::isnan(prof.lambda_bar));
}

TEST(Coercivity, ProfileInvariants) {
  for (const Operator& op : zoo(2)) {
    CoercivityProfile prof = profile(op, -2.0, 4.5, 27, 1024, 30);
    for (size_t i = 0; i < prof.grid.size(); ++i) {
      const auto& p = prof.grid[i];
      EXPECT_LE(p.m, p.mu + 1e-12) << op.name;
      if (p.lambda <= 1.0) EXPECT_GE(p.m, -1e-8) << op.name;
      if (i > 0) {
        EXPECT_LE(p.m, prof.grid[i - 1].m + 1e-8) << op.name << " m monotone";
        EXPECT_LE(p.mu, prof.grid[i - 1].mu + 1e-8) << op.name << " mu monotone";
      }
    }
  }
}

TEST(Coercivity, DualProfileCoincides) {
  for (const Operator& op : {make_pucci_plus(1.0, 3.0, 1.0, 2), make_pseudo_p(3.0, 0.0, 2),
                             make_weighted_inf(2.0, 2)}) {
    CoercivityProfile a = profile(op, -2.0, 3.0, 21, 512, 20);
    CoercivityProfile b = profile(dual(op), -2.0, 3.0, 21, 512, 20);
    for (size_t i = 0; i < a.grid.size(); ++i) {
      EXPECT_NEAR(a.grid[i].m, b.grid[i].m, 1e-8) << op.name;
      EXPECT_NEAR(a.grid[i].mu, b.grid[i].mu, 1e-8) << op.name;
    }
  }
}

TEST(Coercivity, RefinementStability) {
  // quadrupling the sphere sampling moves m, μ by ≤ 1e-4
  for (const Operator& op : {make_pseudo_p(3.0, 0.0, 2), make_weighted_inf(2.0, 2)}) {
    CoercivityProfile coarse = profile(op, -1.0, 3.0, 17, 1024, 50);
    CoercivityProfile fine = profile(op, -1.0, 3.0, 17, 4096, 50);
    for (size_t i = 0; i < coarse.grid.size(); ++i) {
      EXPECT_NEAR(coarse.grid[i].m, fine.grid[i].m, 1e-4) << op.name;
      EXPECT_NEAR(coarse.grid[i].mu, fine.grid[i].mu, 1e-4) << op.name;
    }
  }
}

TEST(Coercivity, CrosscheckClosedForms) {
  {
    Operator op = make_inf_laplacian(2);
    auto rep = crosscheck_closed_form(profile(op, -4.0, 4.0, 17, 256, 10), op);
    EXPECT_TRUE(rep.passed);
  }
  {
    Operator op = make_p_laplacian_variant(2.0, 2.0, 2);
    auto rep = crosscheck_closed_form(profile(op, -4.0, 4.0, 17, 256, 10), op);
    EXPECT_TRUE(rep.passed);
  }
  {
    // pseudo p-Laplacian sandwich on λ ∈ [0, 4]: at λ=2=n the upper bound is 0
    Operator op = make_pseudo_p(2.0, 0.0, 2);
    CoercivityProfile prof = profile(op, 0.0, 4.0, 17, 2048, 50);
    auto rep = crosscheck_closed_form(prof, op);
    EXPECT_TRUE(rep.passed) << (rep.violations.empty()
                                    ? ""
                                    : rep.violations.front().side);
    EXPECT_LE(prof.mu_at(2.0), 0.0 + 1e-6);
  }
  {
    // weighted-∞ with q=2, n=2: m(0) ≥ n^{-q} = 1/4
    Operator op = make_weighted_inf(2.0, 2);
    CoercivityProfile prof = profile(op, 0.0, 3.0, 16, 2048, 50);
    auto rep = crosscheck_closed_form(prof, op);
    EXPECT_TRUE(rep.passed);
    EXPECT_GE(prof.mu_at(0.0), prof.m_at(0.0));
    EXPECT_GE(prof.m_at(0.0), 0.25 - 1e-9);
  }
}

TEST(Coercivity, InputValidation) {
  Operator op = make_inf_laplacian(2);
  EXPECT_THROW(sphere_extrema(op, 0.0, 4, 10), InputError);
  EXPECT_THROW(profile(op, 2.0, 4.0, 33), InputError);   // lambda_min >= 1
  EXPECT_THROW(profile(op, -1.0, 4.0, 8), InputError);   // too few points
}
