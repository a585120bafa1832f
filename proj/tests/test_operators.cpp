#include <gtest/gtest.h>

#include <cmath>

#include "parabarrier/errors.hpp"
#include "parabarrier/operators.hpp"

using namespace parabarrier;

TEST(Operators, InfLaplacianQuadraticForm) {
  Operator op = make_inf_laplacian(2);
  // Σ p_i p_j X_ij with p=(1,0), X=I is |p|² = 1
  EXPECT_DOUBLE_EQ(evaluate(op, {1.0, 0.0}, SymMat::identity(2)), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(op, {3.0, -1.0}, SymMat::zero(2)), 0.0);
}

TEST(Operators, PLaplacianVariantTraceCase) {
  // q=2, a=0: |p|² trace; p=(0,1), X=diag(2,3) -> 5
  Operator op = make_p_laplacian_variant(2.0, 0.0, 2);
  SymMat x(2);
  x.set(0, 0, 2.0);
  x.set(1, 1, 3.0);
  EXPECT_NEAR(evaluate(op, {0.0, 1.0}, x), 5.0, 1e-14);
}

TEST(Operators, ZeroMatrixAnnihilation) {
  for (const Operator& op : zoo(3)) {
    auto rep = check_zero_matrix(op, 50, 123);
    EXPECT_TRUE(rep.passed) << op.name;
    EXPECT_EQ(rep.violations, 0) << op.name;
  }
  // exact, not just within tolerance
  for (const Operator& op : zoo(2))
    EXPECT_EQ(evaluate(op, {3.0, -1.0}, SymMat::zero(2)), 0.0) << op.name;
}

TEST(Operators, DimensionMismatchRejected) {
  Operator op = make_inf_laplacian(2);
  EXPECT_THROW(evaluate(op, {1.0, 0.0, 0.0}, SymMat::identity(3)), InputError);
}

TEST(Operators, NonSymmetricRejected) {
  Operator op = make_inf_laplacian(2);
  EXPECT_THROW(evaluate(op, {1.0, 0.0}, std::vector<double>{1.0, 2.0, 3.0, 4.0}),
               InputError);
}

TEST(Operators, HomogeneityExampleInfLaplacian) {
  // H(2e, X) = 4 H(e, X): k1 = 2
  Operator op = make_inf_laplacian(2);
  std::mt19937_64 rng(7);
  SymMat x = random_symmetric(rng, 2);
  Vec e = random_unit_vector(rng, 2);
  EXPECT_NEAR(evaluate(op, 2.0 * e, x), 4.0 * evaluate(op, e, x), 1e-12);
}

TEST(Operators, HomogeneitySampledAllZoo) {
  for (const Operator& op : zoo(2)) {
    auto rep = check_homogeneity(op, 1000, 42);
    EXPECT_TRUE(rep.passed) << op.name << " worst " << rep.worst;
  }
  for (const Operator& op : zoo(3)) {
    auto rep = check_homogeneity(op, 300, 43);
    EXPECT_TRUE(rep.passed) << op.name << " worst " << rep.worst;
  }
}

TEST(Operators, MonotonicitySampledAllZoo) {
  for (const Operator& op : zoo(2)) {
    auto rep = check_monotonicity(op, 1000, 42);
    EXPECT_TRUE(rep.passed) << op.name << " worst " << rep.worst;
    EXPECT_EQ(rep.violations, 0) << op.name;
  }
}

TEST(Operators, AdversarialOperatorViolatesMonotonicity) {
  Operator bad;
  bad.name = "negative_trace";
  bad.dim = 2;
  bad.k1 = 0.0;
  bad.k2 = 1;
  bad.eval = [](const Vec&, const SymMat& x) { return -x.trace(); };
  auto rep = check_monotonicity(bad, 1000, 42);
  EXPECT_FALSE(rep.passed);
  EXPECT_GT(rep.violations, 0);
}

TEST(Operators, DualPassesConditionSuite) {
  for (const Operator& op : zoo(2)) {
    Operator d = dual(op);
    EXPECT_TRUE(check_homogeneity(d, 500, 99).passed) << d.name;
    EXPECT_TRUE(check_monotonicity(d, 500, 99).passed) << d.name;
    EXPECT_TRUE(check_zero_matrix(d, 50, 99).passed) << d.name;
  }
}

TEST(Operators, DualOfPucciPlusIsPucciMinus) {
  Operator plus = make_pucci_plus(1.0, 3.0, 1.0, 2);
  Operator minus = make_pucci_minus(1.0, 3.0, 1.0, 2);
  Operator d = dual(plus);
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    Vec p = random_vector(rng, 2);
    SymMat x = random_symmetric(rng, 2);
    EXPECT_NEAR(d.eval(p, x), minus.eval(p, x), 1e-12);
  }
}

TEST(Operators, ProfileConsistencyAllZoo) {
  for (const Operator& op : zoo(2)) {
    auto rep = check_profile_consistency(op, -10.0, 10.0, 41, 100, 7);
    EXPECT_TRUE(rep.passed) << op.name << " worst " << rep.worst;
  }
}

TEST(Operators, ProfileClosedFormsPinned) {
  // Example 1: p-Laplacian profile n + a - λ(1+a) via q=0, a=p-2
  Operator plap = make_p_laplacian_variant(0.0, 2.0, 2);  // p = 4
  Vec e{1.0, 0.0};
  EXPECT_NEAR(plap.lambda_profile(1.5, e), 2.0 + 2.0 - 1.5 * 3.0, 1e-15);
  // Example 2: Δ∞ profile 1-λ
  Operator inf = make_inf_laplacian(2);
  EXPECT_DOUBLE_EQ(inf.lambda_profile(0.25, e), 0.75);
  // Example 3: Pucci H⁺ at λ ≤ 1 is ϑ̂(n-λ)
  Operator pp = make_pucci_plus(1.0, 2.0, 0.0, 2);
  EXPECT_DOUBLE_EQ(pp.lambda_profile(0.5, e), 2.0 * (2.0 - 0.5));
  EXPECT_DOUBLE_EQ(pp.lambda_profile(1.0, e), 2.0);
  // λ ≥ 1 branch: ϑ̂(n-1) + θ(1-λ)
  EXPECT_DOUBLE_EQ(pp.lambda_profile(3.0, e), 2.0 + 1.0 * (1.0 - 3.0));
}

TEST(Operators, ZooRejectsInvalidParameters) {
  EXPECT_THROW(make_p_laplacian_variant(2.0, -1.0, 2), ConstructionError);
  EXPECT_THROW(make_pucci_plus(2.0, 1.0, 0.0, 2), ConstructionError);  // θ > ϑ̂
  EXPECT_THROW(make_pseudo_p(-1.0, 0.0, 2), ConstructionError);
  EXPECT_THROW(make_weighted_inf(-0.5, 2), ConstructionError);
}

TEST(Operators, KeyParsing) {
  EXPECT_EQ(operator_from_key("inf_laplacian", 2).name, "inf_laplacian");
  EXPECT_EQ(operator_from_key("pucci_minus(1,3,1)", 2).k1, 1.0);
  EXPECT_NEAR(operator_from_key("pseudo_p(3,0.5)", 2).k1, 3.5, 1e-15);
  EXPECT_THROW(operator_from_key("unknown_op", 2), InputError);
  EXPECT_THROW(operator_from_key("pucci_plus(1)", 2), InputError);
}

TEST(Operators, ExponentsDerived) {
  Operator inf = make_inf_laplacian(2);
  EXPECT_DOUBLE_EQ(inf.k(), 3.0);
  EXPECT_DOUBLE_EQ(inf.gamma(), 4.0);
  Operator w = make_weighted_inf(2.0, 2);
  EXPECT_DOUBLE_EQ(w.k1, 6.0);
  EXPECT_DOUBLE_EQ(w.gamma(), 8.0);
  // gamma - k = k2 >= 1 always
  for (const Operator& op : zoo(2)) EXPECT_GE(op.gamma() - op.k(), 1.0);
}
