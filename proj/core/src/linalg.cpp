#include "parabarrier/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "parabarrier/errors.hpp"

namespace parabarrier {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) throw InputError("normalized: zero vector");
  Vec r = a;
  for (double& x : r) x /= n;
  return r;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(double s, const Vec& a) {
  Vec r = a;
  for (double& x : r) x *= s;
  return r;
}

SymMat SymMat::identity(int n) {
  SymMat m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMat SymMat::outer(const Vec& e) {
  SymMat m(static_cast<int>(e.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) m.set(i, j, e[i] * e[j]);
  return m;
}

SymMat SymMat::pencil(const Vec& e, double lambda) {
  SymMat m = outer(e);
  SymMat r(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) r.set(i, j, (i == j ? 1.0 : 0.0) - lambda * m(i, j));
  return r;
}

SymMat SymMat::pencil_neg(const Vec& e, double lambda) {
  SymMat m = pencil(e, lambda);
  return -m;
}

SymMat SymMat::from_full(int n, const std::vector<double>& full, double tol) {
  if (static_cast<int>(full.size()) != n * n)
    throw InputError("SymMat::from_full: size mismatch");
  double scale = 1.0;
  for (double v : full) scale = std::max(scale, std::abs(v));
  SymMat m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double aij = full[static_cast<size_t>(i) * n + j];
      double aji = full[static_cast<size_t>(j) * n + i];
      if (std::abs(aij - aji) > tol * scale)
        throw InputError("SymMat::from_full: matrix not symmetric within tolerance");
      m.set(i, j, 0.5 * (aij + aji));
    }
  }
  return m;
}

double SymMat::trace() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double SymMat::max_abs() const {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

SymMat& SymMat::operator+=(const SymMat& o) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

SymMat SymMat::operator-() const {
  SymMat r = *this;
  for (double& v : r.a_) v = -v;
  return r;
}

SymMat operator+(SymMat a, const SymMat& b) {
  a += b;
  return a;
}

SymMat operator*(double s, SymMat a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) a.set(i, j, s * a(i, j));
  return a;
}

double quad_form(const Vec& p, const SymMat& X) {
  double s = 0.0;
  int n = X.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += p[i] * p[j] * X(i, j);
  return s;
}

namespace {

double off_diag_norm(const SymMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const SymMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(SymMat a, double tol, int max_sweeps) {
  const int n = a.dim();
  const double stop = tol * std::max(1.0, frobenius(a));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diag_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double app = a(p, p), aqq = a(q, q);
        double theta = 0.5 * (aqq - app) / apq;
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // apply rotation G(p,q,θ)ᵀ A G(p,q,θ)
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a(k, p), akq = a(k, q);
          a.set(k, p, c * akp - s * akq);
          a.set(k, q, s * akp + c * akq);
        }
        a.set(p, p, app - t * apq);
        a.set(q, q, aqq + t * apq);
        a.set(p, q, 0.0);
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

Vec random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (double& x : v) x = u(rng);
  return v;
}

Vec random_unit_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n);
  double nn = 0.0;
  do {
    for (double& x : v) x = g(rng);
    nn = norm(v);
  } while (nn < 1e-12);
  for (double& x : v) x /= nn;
  return v;
}

SymMat random_symmetric(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  SymMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, 0.5 * (u(rng) + u(rng)));
  return m;
}

SymMat random_psd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<size_t>(n) * n);
  for (double& x : v) x = u(rng);
  SymMat m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += v[static_cast<size_t>(k) * n + i] * v[static_cast<size_t>(k) * n + j];
      m.set(i, j, s);
    }
  }
  return m;
}

}  // namespace parabarrier
