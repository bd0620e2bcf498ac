#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace crstab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/**
 * @brief CR dimension bookkeeping for the sphere S^{2n+1} ⊂ ℂ^{n+1}.
 *
 * Derived quantities:
 *   Q      = 2n+2   (homogeneous dimension of H^n)
 *   q      = 2Q/(Q-2) = 2 + 2/n   (critical exponent, q ∈ (2,3] iff n ≥ 2)
 *   theta  = q - 2 = 4/(Q-2)
 *   half_nu = (Q-2)/4 = n/2, so lambda_{0,0} = half_nu².
 */
struct CRDimension {
  int n = 1;

  explicit CRDimension(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("CRDimension: n must be >= 1");
  }
  CRDimension() = default;

  int Q() const { return 2 * n + 2; }
  int complex_dim() const { return n + 1; }
  double q() const { return 2.0 * Q() / (Q() - 2.0); }
  double theta() const { return 4.0 / (Q() - 2.0); }
  double half_nu() const { return 0.25 * (Q() - 2.0); }

  /// Surface measure of S^{2n+1}: 2 π^{n+1} / n!
  double sphere_measure() const {
    double v = 2.0;
    for (int i = 1; i <= n + 1; ++i) v *= kPi;
    for (int i = 2; i <= n; ++i) v /= i;
    return v;
  }
};

/// Point on the unit sphere of ℂ^{n+1}.
struct SpherePoint {
  CVector xi;

  double norm_sq() const {
    double s = 0.0;
    for (const auto& x : xi) s += std::norm(x);
    return s;
  }
  bool on_sphere(double tol = 1e-12) const { return std::abs(norm_sq() - 1.0) <= tol; }
};

/// Hermitian pairing a·conj(b) = Σ a_i conj(b_i).
inline Complex hermitian_dot(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("hermitian_dot: dimension mismatch");
  Complex s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

inline double abs_sq(const CVector& a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return s;
}

}  // namespace crstab
