#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace crstab;
using crstab::testing::Rng;

TEST(SpectralField, ProjectCoordinateHasSingleCoefficient) {
  const auto ctx = crstab::testing::ctx_n1(4);
  const SpectralField f = SpectralField::project(
      ctx, [](const SpherePoint& p) { return p.xi[0]; });
  auto [begin, count] = ctx->basis().block(1, 0);
  double inside = 0.0, outside = 0.0;
  for (int i = 0; i < ctx->num_elements(); ++i) {
    if (i >= begin && i < begin + count)
      inside += std::norm(f.coeffs()(i));
    else
      outside += std::norm(f.coeffs()(i));
  }
  EXPECT_GT(inside, 0.0);
  EXPECT_LT(outside, 1e-24);
}

TEST(SpectralField, ConstantNorms) {
  for (int n : {1, 2}) {
    const auto ctx = (n == 1) ? crstab::testing::ctx_n1(4) : crstab::testing::ctx_n2(2);
    const SpectralField one = SpectralField::constant(ctx, 1.0);
    const double smeas = ctx->dim().sphere_measure();
    for (double p : {2.0, ctx->dim().q()}) {
      EXPECT_NEAR(one.lp_norm(p, Measure::Surface), std::pow(smeas, 1.0 / p),
                  1e-12 * std::pow(smeas, 1.0 / p));
      EXPECT_NEAR(one.lp_norm(p, Measure::Probability), 1.0, 1e-12);
    }
    EXPECT_NEAR(one.mean(Measure::Probability), 1.0, 1e-13);
  }
}

TEST(SpectralField, ParsevalOnBandLimitedFields) {
  const auto ctx = crstab::testing::ctx_n1(4);
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField f = crstab::testing::random_real_field(ctx, rng);
    const double spectral = f.l2_norm_sq(Measure::Surface);
    const double quadrature = std::pow(f.lp_norm(2.0, Measure::Surface), 2.0);
    EXPECT_NEAR(spectral, quadrature, 1e-10 * spectral);
  }
}

TEST(SpectralField, ProjectEvaluateIdentity) {
  const auto ctx = crstab::testing::ctx_n1(4);
  Rng rng(22);
  const SpectralField f = crstab::testing::random_real_field(ctx, rng);
  const SpectralField g = SpectralField::project_nodes(ctx, f.node_values());
  EXPECT_LT((g.coeffs() - f.coeffs()).norm(), 1e-10 * f.coeffs().norm());
  // pointwise re-evaluation off the grid
  const SpherePoint p{{Complex(0.1, 0.7), std::polar(std::sqrt(1.0 - 0.5), 2.0)}};
  EXPECT_NEAR(std::abs(f.evaluate(p) - g.evaluate(p)), 0.0, 1e-10);
}

TEST(SpectralField, LpNormRequiresPGeqOne) {
  const auto ctx = crstab::testing::ctx_n1(4);
  const SpectralField one = SpectralField::constant(ctx, 1.0);
  EXPECT_THROW(one.lp_norm(0.5), std::invalid_argument);
}

TEST(SpectralField, PolynomialProjectionMatchesGridProjection) {
  const auto ctx = crstab::testing::ctx_n1(4);
  ComplexPolynomial p = ComplexPolynomial::variable(0, false) * ComplexPolynomial::variable(1, true);
  p += ComplexPolynomial::constant(0.5);
  const SpectralField exact = SpectralField::project_polynomial(ctx, p);
  const SpectralField grid = SpectralField::project(
      ctx, [&](const SpherePoint& q) { return p.evaluate(std::span<const Complex>(q.xi)); });
  EXPECT_LT((exact.coeffs() - grid.coeffs()).norm(), 1e-12);
}

TEST(RealHarmonic, NormalizedRealZeroMean) {
  for (int n : {1, 2}) {
    const auto ctx = (n == 1) ? crstab::testing::ctx_n1(6) : crstab::testing::ctx_n2(3);
    for (auto [j, k] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {2, 1}}) {
      auto [begin, count] = ctx->basis().block(j, k);
      for (int idx = 0; idx < std::min(count, 3); ++idx) {
        const SpectralField y = real_harmonic(ctx, j, k, idx);
        EXPECT_TRUE(y.is_real());
        EXPECT_NEAR(y.l2_norm_sq(Measure::Probability), 1.0, 1e-12);
        EXPECT_NEAR(y.mean(), 0.0, 1e-13);
      }
    }
  }
}

TEST(RealHarmonic, SphericalHarmonicL4Bound) {
  // Probability-normalized elements of H_{j,k} with j+k <= 4 obey
  // ‖Y‖_{L⁴} <= 3^{(j+k)/2}.
  for (int n : {1, 2}) {
    const auto ctx = (n == 1) ? crstab::testing::ctx_n1(4) : crstab::testing::ctx_n2(4);
    const double smeas = ctx->dim().sphere_measure();
    for (int i = 0; i < ctx->num_elements(); ++i) {
      const auto& e = ctx->basis().elements[i];
      if (e.j + e.k > 4) continue;
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ctx->num_elements());
      c(i) = std::sqrt(smeas);
      const double l4 = SpectralField(ctx, c).lp_norm(4.0, Measure::Probability);
      EXPECT_LE(l4, std::pow(3.0, 0.5 * (e.j + e.k)) + 1e-12)
          << "n=" << n << " (" << e.j << "," << e.k << ")";
    }
  }
}
