#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "parabarrier/errors.hpp"
#include "parabarrier/phi.hpp"

using namespace parabarrier;

TEST(Concavity, TrudingerFamilyLinearG) {
  // f(u) = u^{p-2}, k = p-1: g = f^{1/(k-1)} = u, linear hence concave
  Nonlinearity nl = Nonlinearity::trudinger(4.0);
  ConcavityReport rep = check_concavity(nl, 3.0, 0.5, 4.0, 41);
  EXPECT_TRUE(rep.concave);
}

TEST(Concavity, CubicFamily) {
  // f(u) = 3u², k = 3: g = √3 u, concave
  Nonlinearity nl = Nonlinearity::power(3.0, 2.0);
  ConcavityReport rep = check_concavity(nl, 3.0, 0.5, 4.0, 41);
  EXPECT_TRUE(rep.concave);
  EXPECT_TRUE(rep.derivative_monotone);
}

TEST(Concavity, StrictlyConvexFails) {
  // f(u) = u², k = 2: g = u², strictly convex ⇒ midpoint test fails
  Nonlinearity nl = Nonlinearity::power(1.0, 2.0);
  ConcavityReport rep = check_concavity(nl, 2.0, 0.5, 4.0, 41);
  EXPECT_FALSE(rep.concave);
  EXPECT_LT(rep.worst_gap, 0.0);
}

TEST(Nonlinearity, DerivativeMatchesFiniteDifference) {
  for (const Nonlinearity& nl :
       {Nonlinearity::power(3.0, 2.0), Nonlinearity::trudinger(3.5),
        Nonlinearity::constant(2.0)}) {
    for (double u : {0.5, 1.0, 2.0, 3.7}) {
      double fd = (nl.f(u + 1e-6) - nl.f(u - 1e-6)) / 2e-6;
      EXPECT_NEAR(nl.f_prime(u), fd, 1e-6 * std::max(1.0, std::abs(fd))) << nl.name;
    }
  }
}

TEST(Phi, TrudingerRecoversExp) {
  // f(u) = u^{p-2}, k = p-1, phi0 = 1: φ = e^τ
  Nonlinearity nl = Nonlinearity::trudinger(3.0);
  PhiSolution sol = solve_phi(nl, 2.0, 1.0, 0.0, 1.0, 1000);
  EXPECT_EQ(sol.closed_form_tag, PhiForm::Exp);
  EXPECT_NEAR(sol.phi(1.0), std::exp(1.0), 1e-8);
  EXPECT_NEAR(sol.closed_form(1.0), std::exp(1.0), 1e-14);
}

TEST(Phi, ConstantGivesLinear) {
  // f ≡ c, k = 2: φ = phi0 + c τ
  Nonlinearity nl = Nonlinearity::constant(2.5);
  PhiSolution sol = solve_phi(nl, 2.0, 0.75, 0.0, 2.0, 200);
  EXPECT_EQ(sol.closed_form_tag, PhiForm::Linear);
  EXPECT_NEAR(sol.phi(2.0), 0.75 + 2.5 * 2.0, 1e-10);
}

TEST(Phi, SeparablePowerCase) {
  // f(u) = u, k = 3: φ' = √φ, φ(τ) = (τ/2 + √phi0)²
  Nonlinearity nl = Nonlinearity::power(1.0, 1.0);
  PhiSolution sol = solve_phi(nl, 3.0, 1.0, 0.0, 1.0, 1000);
  EXPECT_EQ(sol.closed_form_tag, PhiForm::Power);
  EXPECT_NEAR(sol.phi(1.0), std::pow(0.5 + 1.0, 2.0), 1e-8);
  EXPECT_NEAR(sol.closed_form(1.0), 2.25, 1e-14);
}

TEST(Phi, FourthOrderConvergence) {
  // halving h divides the error by ~16 on the exp case
  Nonlinearity nl = Nonlinearity::trudinger(3.0);
  std::vector<double> errs;
  for (int steps : {8, 16, 32, 64}) {
    PhiSolution sol = solve_phi(nl, 2.0, 1.0, 0.0, 1.0, steps);
    errs.push_back(std::abs(sol.phi_grid.back() - std::exp(1.0)));
  }
  for (size_t i = 0; i + 1 < errs.size(); ++i) {
    double order = std::log2(errs[i] / errs[i + 1]);
    EXPECT_NEAR(order, 4.0, 0.3) << "refinement step " << i;
  }
}

TEST(Phi, OdeResidualOnGrid) {
  // φ'(τ) = f(φ(τ))^{1/(k-1)} at every stored node
  Nonlinearity nl = Nonlinearity::power(2.0, 1.5);
  PhiSolution sol = solve_phi(nl, 2.5, 1.2, 0.0, 1.5, 400);
  for (size_t i = 0; i < sol.tau_grid.size(); ++i) {
    double rhs = std::pow(nl.f(sol.phi_grid[i]), 1.0 / (2.5 - 1.0));
    EXPECT_NEAR(sol.phi_prime_grid[i], rhs, 1e-6 * std::max(1.0, rhs));
  }
}

TEST(Phi, InverseRoundTrip) {
  Nonlinearity nl = Nonlinearity::power(1.0, 1.0);
  PhiSolution sol = solve_phi(nl, 3.0, 1.0, 0.0, 2.0, 500);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(sol.range_lo(), sol.range_hi());
  for (int rep = 0; rep < 200; ++rep) {
    double v = u(rng);
    EXPECT_NEAR(sol.phi(sol.phi_inverse(v)), v, 1e-8);
  }
  // strict monotonicity
  for (size_t i = 0; i + 1 < sol.phi_grid.size(); ++i)
    EXPECT_LT(sol.phi_grid[i], sol.phi_grid[i + 1]);
}

TEST(Phi, PhippOverPhipTwoWays) {
  // chain rule via f, f' vs numerical differentiation of φ'
  Nonlinearity nl = Nonlinearity::power(3.0, 2.0);  // concave-admissible for k=3
  PhiSolution sol = solve_phi(nl, 3.0, 1.0, 0.0, 1.0, 800);
  double prev = 1e300;
  for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double chain = sol.phipp_over_phip(tau);
    double h = 1e-5;
    double numeric =
        (sol.phi_prime(tau + h) - sol.phi_prime(tau - h)) / (2.0 * h) / sol.phi_prime(tau);
    EXPECT_NEAR(chain, numeric, 1e-5 * std::max(1.0, std::abs(chain)));
    // concave-admissible f ⇒ φ''/φ' non-increasing
    EXPECT_LE(chain, prev + 1e-12);
    prev = chain;
  }
}

TEST(Phi, TruncationOnDomainExit) {
  // integrating f(u) = u backwards in φ: running τ down from phi0 toward the
  // domain floor must stop rather than silently clamp
  Nonlinearity nl;
  nl.name = "shifted";
  nl.f = [](double u) { return u - 1.0; };  // positive only above 1
  nl.f_prime = [](double) { return 1.0; };
  nl.domain_floor = 1.0;
  nl.family = Nonlinearity::Family::Other;
  PhiSolution sol = solve_phi(nl, 3.0, 1.0 + 1e-6, 0.0, 10.0, 64);
  EXPECT_EQ(sol.closed_form_tag, PhiForm::Numeric);
  EXPECT_FALSE(sol.truncated);  // forward integration grows away from the floor
  // f(u) = 1/(2-u), k = 2: (2-φ)² = 1 - 2τ, so φ hits the domain edge at τ = 1/2
  Nonlinearity nl2;
  nl2.name = "blowup";
  nl2.f = [](double u) { return 1.0 / (2.0 - u); };
  nl2.f_prime = [](double u) { return 1.0 / ((2.0 - u) * (2.0 - u)); };
  nl2.family = Nonlinearity::Family::Other;
  PhiSolution sol2 = solve_phi(nl2, 2.0, 1.0, 0.0, 5.0, 256);
  EXPECT_TRUE(sol2.truncated);
  EXPECT_LT(sol2.truncation_tau, 0.6);
  EXPECT_GT(sol2.truncation_tau, 0.3);
}

TEST(Phi, InputValidation) {
  Nonlinearity nl = Nonlinearity::constant(1.0);
  EXPECT_THROW(solve_phi(nl, 1.0, 1.0, 0.0, 1.0, 100), InputError);   // k <= 1
  EXPECT_THROW(solve_phi(nl, 2.0, 1.0, 1.0, 0.0, 100), InputError);   // empty span
  Nonlinearity pw = Nonlinearity::power(1.0, 1.0);
  EXPECT_THROW(solve_phi(pw, 2.0, 0.0, 0.0, 1.0, 100), InputError);   // f(phi0) = 0
}

TEST(Phi, ExactExpForKOne) {
  PhiSolution sol = PhiSolution::exact_exp(-1.0, 1.0, 100);
  EXPECT_NEAR(sol.phi(0.5), std::exp(0.5), 1e-9);
  EXPECT_NEAR(sol.phi_prime(0.5), std::exp(0.5), 1e-9);
  EXPECT_NEAR(sol.phipp_over_phip(0.3), 1.0, 1e-12);
  EXPECT_NEAR(sol.phi_inverse(1.0), 0.0, 1e-10);
}
