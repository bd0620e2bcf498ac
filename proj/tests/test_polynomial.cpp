#include <gtest/gtest.h>

#include <crstab/polynomial.hpp>

#include "test_support.hpp"

using namespace crstab;
using crstab::testing::Rng;

TEST(MonomialIntegral, SphereMeasureAndOrthogonality) {
  // α = β = 0: the full measure 2π^{n+1}/n!.
  const int zeros2[2] = {0, 0};
  EXPECT_NEAR(monomial_integral(std::span<const int>(zeros2, 2), std::span<const int>(zeros2, 2), 1),
              2.0 * kPi * kPi, 1e-12);
  const int zeros3[3] = {0, 0, 0};
  EXPECT_NEAR(monomial_integral(std::span<const int>(zeros3, 3), std::span<const int>(zeros3, 3), 2),
              std::pow(kPi, 3), 1e-12);
  // α != β -> 0 by phase symmetry.
  const int a[2] = {2, 0}, b[2] = {1, 1};
  EXPECT_EQ(monomial_integral(std::span<const int>(a, 2), std::span<const int>(b, 2), 1), 0.0);
  // n=1, α = β = (1,0): |S³|·1!·1/(2)! = π².
  const int c[2] = {1, 0};
  EXPECT_NEAR(monomial_integral(std::span<const int>(c, 2), std::span<const int>(c, 2), 1),
              kPi * kPi, 1e-12);
}

TEST(MonomialIntegral, MonteCarloOracle) {
  // Uniform samples on S³ from normalized 4D Gaussians; 1e7 samples give the
  // closed-form values to a few parts in 1e3.
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> normal(0.0, 1.0);
  const long N = 10000000;
  double sum10 = 0.0, sum21 = 0.0;
  for (long i = 0; i < N; ++i) {
    const Complex z1(normal(gen), normal(gen));
    const Complex z2(normal(gen), normal(gen));
    const double nrm = std::sqrt(std::norm(z1) + std::norm(z2));
    const double a1 = std::norm(z1 / nrm), a2 = std::norm(z2 / nrm);
    sum10 += a1;            // |ζ1|²
    sum21 += a1 * a1 * a2;  // |ζ1|⁴ |ζ2|²
  }
  const double measure = 2.0 * kPi * kPi;
  const int i10[2] = {1, 0}, i21[2] = {2, 1};
  const double exact10 = monomial_integral(std::span<const int>(i10, 2), std::span<const int>(i10, 2), 1);
  const double exact21 = monomial_integral(std::span<const int>(i21, 2), std::span<const int>(i21, 2), 1);
  EXPECT_NEAR(measure * sum10 / N, exact10, 1e-3 * exact10);
  EXPECT_NEAR(measure * sum21 / N, exact21, 5e-3 * exact21);
}

TEST(PolynomialAlgebra, ArithmeticAndEvaluation) {
  const auto z1 = ComplexPolynomial::variable(0, false);
  const auto z2b = ComplexPolynomial::variable(1, true);
  const auto p = z1 * z2b * Complex(2.0) + ComplexPolynomial::constant(1.0);
  const CVector pt = {Complex(0.3, 0.1), Complex(-0.2, 0.5)};
  const Complex expected = 2.0 * pt[0] * std::conj(pt[1]) + 1.0;
  EXPECT_NEAR(std::abs(p.evaluate(std::span<const Complex>(pt)) - expected), 0.0, 1e-15);
  EXPECT_EQ(p.total_degree(), 2);

  const auto d = p.derivative(0, false);  // 2 ζ̄2
  EXPECT_NEAR(std::abs(d.evaluate(std::span<const Complex>(pt)) - 2.0 * std::conj(pt[1])), 0.0, 1e-15);
  const auto pc = p.conjugate();
  EXPECT_NEAR(std::abs(pc.evaluate(std::span<const Complex>(pt)) - std::conj(expected)), 0.0, 1e-15);
}

TEST(TOperators, KillConstantsAndFirstOrderAction) {
  const auto one = ComplexPolynomial::constant(1.0);
  for (int j = 0; j < 2; ++j) {
    EXPECT_TRUE(apply_T(one, j, false, 2).empty());
    EXPECT_TRUE(apply_T(one, j, true, 2).empty());
  }
  // T₁ ζ₂ = -ζ̄₁ ζ₂ exactly as polynomials.
  const auto z2 = ComplexPolynomial::variable(1, false);
  const auto t1z2 = apply_T(z2, 0, false, 2);
  const auto expected =
      ComplexPolynomial::variable(0, true) * ComplexPolynomial::variable(1, false) * Complex(-1.0);
  EXPECT_NEAR(std::sqrt(sphere_norm_sq(t1z2 - expected, 1)), 0.0, 1e-14);
}

namespace {
// Directional derivative of p along the real curve through ξ0 with velocity w
// (components of the (1,0) field): d/ds p = Σ ∂p/∂ζ_k w_k + Σ ∂p/∂ζ̄_k conj(w_k).
Complex curve_fd(const ComplexPolynomial& p, const CVector& xi0, const CVector& w, double h) {
  auto at = [&](double s) {
    CVector x(xi0.size());
    double norm_sq = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] = xi0[i] + s * w[i];
      norm_sq += std::norm(x[i]);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& c : x) c *= inv;
    return p.evaluate(std::span<const Complex>(x));
  };
  return (at(h) - at(-h)) / (2.0 * h);
}

CVector z_field_components(const CVector& xi, int j) {
  CVector w(xi.size());
  for (size_t k = 0; k < xi.size(); ++k)
    w[k] = (static_cast<int>(k) == j ? 1.0 : 0.0) - std::conj(xi[j]) * xi[k];
  return w;
}
}  // namespace

TEST(TOperators, FiniteDifferenceAlongSphereCurves) {
  // D_w p = T_j p + T̄_j p and D_{iw} p = i(T_j p - T̄_j p) recover both
  // operators from two curve derivatives.
  Rng rng(11);
  const int nv = 2;
  for (int trial = 0; trial < 12; ++trial) {
    ComplexPolynomial p;
    for (int t = 0; t < 4; ++t) {
      MonomialKey m;
      m.a[0] = static_cast<uint8_t>(std::abs(static_cast<int>(3 * rng.positive())));
      m.a[1] = static_cast<uint8_t>(std::abs(static_cast<int>(2 * rng.positive())));
      m.b[0] = static_cast<uint8_t>(std::abs(static_cast<int>(2 * rng.positive())));
      p.add_term(m, Complex(rng.uniform(), rng.uniform()));
    }
    CVector xi0 = {Complex(rng.uniform(), rng.uniform()), Complex(rng.uniform(), rng.uniform())};
    double nrm = std::sqrt(abs_sq(xi0));
    if (nrm < 0.3) continue;
    for (auto& c : xi0) c /= nrm;
    for (int j = 0; j < nv; ++j) {
      const CVector w = z_field_components(xi0, j);
      CVector iw(w.size());
      for (size_t k = 0; k < w.size(); ++k) iw[k] = Complex(0, 1) * w[k];
      const Complex dw = curve_fd(p, xi0, w, 1e-5);
      const Complex diw = curve_fd(p, xi0, iw, 1e-5);
      const Complex t_fd = 0.5 * (dw - Complex(0, 1) * diw);
      const Complex tbar_fd = 0.5 * (dw + Complex(0, 1) * diw);
      const Complex t_sym = apply_T(p, j, false, nv).evaluate(std::span<const Complex>(xi0));
      const Complex tbar_sym = apply_T(p, j, true, nv).evaluate(std::span<const Complex>(xi0));
      EXPECT_NEAR(std::abs(t_fd - t_sym), 0.0, 1e-6);
      EXPECT_NEAR(std::abs(tbar_fd - tbar_sym), 0.0, 1e-6);
    }
  }
}

TEST(TOperators, NorthPoleValues) {
  // T̄_j ζ_j vanishes at the north pole for every j.
  const CVector north = {Complex(0, 0), Complex(0, 0), Complex(1, 0)};
  for (int j = 0; j < 3; ++j) {
    const auto zj = ComplexPolynomial::variable(j, false);
    const Complex v = apply_T(zj, j, true, 3).evaluate(std::span<const Complex>(north));
    EXPECT_NEAR(std::abs(v), 0.0, 1e-15);
  }
}

TEST(Sublaplacian, ConstantAndDegreeOneEigenvalues) {
  for (int n : {1, 2}) {
    const auto one = ComplexPolynomial::constant(1.0);
    const auto l1 = apply_conformal_sublaplacian(one, n);
    // L(1) = n²/4.
    const auto diff = l1 - one * Complex(0.25 * n * n);
    EXPECT_NEAR(std::sqrt(sphere_norm_sq(diff.sphere_reduce(n + 1), n)), 0.0, 1e-13);
  }
  // n=1: L ζ₁ = (3/4) ζ₁ modulo the sphere ideal.
  const auto z1 = ComplexPolynomial::variable(0, false);
  const auto r = (apply_conformal_sublaplacian(z1, 1) - z1 * Complex(0.75)).sphere_reduce(2);
  EXPECT_NEAR(std::sqrt(sphere_norm_sq(r, 1)), 0.0, 1e-13);
  // Rayleigh quotient confirms the multiplier 0.75.
  const Complex num = sphere_inner_product(apply_conformal_sublaplacian(z1, 1), z1, 1);
  const Complex den = sphere_inner_product(z1, z1, 1);
  EXPECT_NEAR(std::abs(num / den - 0.75), 0.0, 1e-13);
}

TEST(Sublaplacian, EigenvalueFormulas) {
  EXPECT_DOUBLE_EQ(sublaplacian_eigenvalue(0, 0, 1), 0.25);
  EXPECT_DOUBLE_EQ(sublaplacian_eigenvalue(1, 1, 1), 2.25);
  EXPECT_DOUBLE_EQ(sublaplacian_eigenvalue(2, 0, 1), 1.25);
  for (int n : {1, 2, 3}) {
    for (int j = 0; j <= 10; ++j)
      for (int k = 0; k <= 10; ++k)
        EXPECT_NEAR(sublaplacian_eigenvalue_gamma(j, k, n), sublaplacian_eigenvalue(j, k, n),
                    1e-12 * sublaplacian_eigenvalue(j, k, n));
  }
  EXPECT_THROW(sublaplacian_eigenvalue(-1, 0, 1), std::invalid_argument);
}

TEST(SphereReduce, CanonicalFormIsExactOnIdeal) {
  // (Σ|ζ_i|² - 1) · p reduces to zero for arbitrary p.
  Rng rng(13);
  ComplexPolynomial relation;
  for (int i = 0; i < 2; ++i) {
    MonomialKey m;
    m.a[i] = 1;
    m.b[i] = 1;
    relation.add_term(m, 1.0);
  }
  relation.add_term(MonomialKey{}, -1.0);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexPolynomial p;
    for (int t = 0; t < 5; ++t) {
      MonomialKey m;
      m.a[0] = static_cast<uint8_t>(3 * rng.positive());
      m.b[1] = static_cast<uint8_t>(3 * rng.positive());
      m.a[1] = static_cast<uint8_t>(2 * rng.positive());
      p.add_term(m, Complex(rng.uniform(), rng.uniform()));
    }
    const auto reduced = (relation * p).sphere_reduce(2).pruned(1e-14);
    EXPECT_TRUE(reduced.empty());
  }
}
