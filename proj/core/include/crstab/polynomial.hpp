#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>

#include "crstab/types.hpp"

namespace crstab {

/// Exponent pair (α, β) of a monomial ζ^α ζ̄^β in at most kMaxVars complex variables.
struct MonomialKey {
  static constexpr int kMaxVars = 4;
  std::array<uint8_t, kMaxVars> a{};  // holomorphic exponents
  std::array<uint8_t, kMaxVars> b{};  // antiholomorphic exponents

  auto operator<=>(const MonomialKey&) const = default;
  int degree() const {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += a[i] + b[i];
    return d;
  }
};

/**
 * @brief Sparse polynomial in (ζ, ζ̄) over ℂ^{n+1} with complex coefficients.
 *
 * Exact coefficient arithmetic (up to double rounding); supports the CR
 * operators T_j = ∂_j - ζ̄_j Σ_k ζ_k ∂_k and their conjugates, the conformal
 * sublaplacian L = -½ Σ (T̄_j T_j + T_j T̄_j) + n²/4, and exact L²(S^{2n+1})
 * inner products through closed-form monomial integrals.
 */
class ComplexPolynomial {
 public:
  using TermMap = std::map<MonomialKey, Complex>;

  ComplexPolynomial() = default;
  static ComplexPolynomial constant(Complex c);
  /// The variable ζ_j (0-based) or ζ̄_j if conjugated.
  static ComplexPolynomial variable(int j, bool conjugated = false);

  void add_term(const MonomialKey& m, Complex c);
  bool empty() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  int total_degree() const;

  ComplexPolynomial operator+(const ComplexPolynomial& o) const;
  ComplexPolynomial operator-(const ComplexPolynomial& o) const;
  ComplexPolynomial operator*(const ComplexPolynomial& o) const;
  ComplexPolynomial operator*(Complex s) const;
  ComplexPolynomial& operator+=(const ComplexPolynomial& o);

  ComplexPolynomial conjugate() const;
  ComplexPolynomial derivative(int j, bool conjugated) const;

  Complex evaluate(std::span<const Complex> point) const;
  Complex evaluate(const SpherePoint& p) const { return evaluate(std::span<const Complex>(p.xi)); }

  /// Drop terms with |coeff| <= tol (cleanup after cancellations).
  ComplexPolynomial pruned(double tol = 0.0) const;

  /**
   * Canonical form modulo the sphere ideal (Σ|ζ_i|² - 1): substitutes
   * ζ_m ζ̄_m -> 1 - Σ_{i<m} ζ_i ζ̄_i (m = n) greedily on the highest powers.
   */
  ComplexPolynomial sphere_reduce(int nvars) const;

 private:
  TermMap terms_;
};

/**
 * @brief ∫_{S^{2n+1}} ζ^α ζ̄^β dσ (surface measure).
 *
 * Zero unless α = β, in which case the value is |S^{2n+1}| n! α! / (n+|α|)!.
 */
double monomial_integral(std::span<const int> alpha, std::span<const int> beta, int n);
double monomial_integral(const MonomialKey& m, int n);

/// Exact ∫_S p · conj(q) dσ via monomial integrals.
Complex sphere_inner_product(const ComplexPolynomial& p, const ComplexPolynomial& q, int n);
double sphere_norm_sq(const ComplexPolynomial& p, int n);

/// T_j p (j 0-based) or T̄_j p when conjugated, over ℂ^{n+1} (pass nvars = n+1).
ComplexPolynomial apply_T(const ComplexPolynomial& p, int j, bool conjugated, int nvars);

/// Conformal sublaplacian L p = -½ Σ_j (T̄_j T_j + T_j T̄_j) p + (n²/4) p.
ComplexPolynomial apply_conformal_sublaplacian(const ComplexPolynomial& p, int n);

/// Eigenvalue of L on H_{j,k}: ((Q-2)/4 + k)((Q-2)/4 + j).
double sublaplacian_eigenvalue(int j, int k, int n);
/// The same eigenvalue through the Γ-quotient form; agrees to 1e-12.
double sublaplacian_eigenvalue_gamma(int j, int k, int n);

}  // namespace crstab
