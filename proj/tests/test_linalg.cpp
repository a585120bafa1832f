#include <gtest/gtest.h>

#include <cmath>

#include "parabarrier/errors.hpp"
#include "parabarrier/linalg.hpp"

using namespace parabarrier;

TEST(Linalg, PencilMatchesDefinition) {
  Vec e = normalized({3.0, -1.0});
  SymMat p = SymMat::pencil(e, 2.5);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(p(i, j), (i == j ? 1.0 : 0.0) - 2.5 * e[i] * e[j], 1e-15);
  // e is an eigenvector with eigenvalue 1-λ
  EXPECT_NEAR(quad_form(e, p), 1.0 - 2.5, 1e-14);
}

TEST(Linalg, FromFullRejectsAsymmetry) {
  std::vector<double> bad{1.0, 2.0, 3.0, 4.0};
  EXPECT_THROW(SymMat::from_full(2, bad), InputError);
  std::vector<double> good{1.0, 2.0, 2.0, 4.0};
  SymMat m = SymMat::from_full(2, good);
  EXPECT_DOUBLE_EQ(m(0, 1), 2.0);
}

TEST(Linalg, JacobiEigenvaluesDiag) {
  SymMat m(3);
  m.set(0, 0, 2.0);
  m.set(1, 1, -1.0);
  m.set(2, 2, 5.0);
  auto ev = jacobi_eigenvalues(m);
  EXPECT_NEAR(ev[0], -1.0, 1e-12);
  EXPECT_NEAR(ev[1], 2.0, 1e-12);
  EXPECT_NEAR(ev[2], 5.0, 1e-12);
}

TEST(Linalg, JacobiEigenvaluesPencil) {
  // I - λ e⊗e has eigenvalues 1 (n-1 fold) and 1-λ
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      Vec e = random_unit_vector(rng, n);
      double lam = -4.0 + 0.4 * rep;
      auto ev = jacobi_eigenvalues(SymMat::pencil(e, lam));
      std::vector<double> expect(n, 1.0);
      expect[0] = 1.0 - lam;
      std::sort(expect.begin(), expect.end());
      for (int i = 0; i < n; ++i) EXPECT_NEAR(ev[i], expect[i], 1e-10);
    }
  }
}

TEST(Linalg, JacobiMatchesCharacteristicPolynomial2x2) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    SymMat m = random_symmetric(rng, 2);
    auto ev = jacobi_eigenvalues(m);
    double tr = m(0, 0) + m(1, 1);
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    EXPECT_NEAR(ev[0], tr / 2.0 - disc, 1e-12);
    EXPECT_NEAR(ev[1], tr / 2.0 + disc, 1e-12);
  }
}

TEST(Linalg, RandomPsdIsPsd) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    SymMat w = random_psd(rng, 4);
    auto ev = jacobi_eigenvalues(w);
    EXPECT_GE(ev.front(), -1e-12);
  }
}
