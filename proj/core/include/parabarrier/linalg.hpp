#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace parabarrier {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalized(const Vec& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);

/// Dense symmetric matrix, full row-major storage. set() keeps both triangles
/// in sync so a SymMat is symmetric by construction.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  static SymMat identity(int n);
  static SymMat zero(int n) { return SymMat(n); }
  static SymMat outer(const Vec& e);                       // e ⊗ e
  static SymMat pencil(const Vec& e, double lambda);       // I - λ e⊗e
  static SymMat pencil_neg(const Vec& e, double lambda);   // λ e⊗e - I
  // Validates symmetry of full row-major data; throws InputError beyond tol.
  static SymMat from_full(int n, const std::vector<double>& full, double tol = 1e-9);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    a_[static_cast<size_t>(i) * n_ + j] = v;
    a_[static_cast<size_t>(j) * n_ + i] = v;
  }
  void add(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  double trace() const;
  double max_abs() const;
  SymMat& operator+=(const SymMat& o);
  SymMat operator-() const;

  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);

double quad_form(const Vec& p, const SymMat& X);  // pᵀ X p

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
/// Sweeps until the off-diagonal Frobenius norm drops below
/// tol * max(1, ||A||_F). Ascending order.
std::vector<double> jacobi_eigenvalues(SymMat a, double tol = 1e-12, int max_sweeps = 100);

// Seeded sample generators used by the property checks.
Vec random_vector(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0);
Vec random_unit_vector(std::mt19937_64& rng, int n);
SymMat random_symmetric(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0);
SymMat random_psd(std::mt19937_64& rng, int n);  // VᵀV

}  // namespace parabarrier
