#include <gtest/gtest.h>

#include <crstab/heisenberg.hpp>

#include "test_support.hpp"

using namespace crstab;
using namespace crstab::heis;
using crstab::testing::Rng;

namespace {
HPoint random_point(int n, Rng& rng, double scale = 1.0) {
  HPoint p;
  p.z.resize(n);
  for (auto& z : p.z) z = scale * Complex(rng.uniform(), rng.uniform());
  p.t = scale * rng.uniform();
  return p;
}
}  // namespace

TEST(HeisenbergGroup, IdentityAndInverse) {
  Rng rng(1);
  for (int n : {1, 2}) {
    const HPoint e = HPoint::identity(n);
    for (int trial = 0; trial < 20; ++trial) {
      const HPoint u = random_point(n, rng);
      const HPoint lhs = group_compose(e, u);
      for (int i = 0; i < n; ++i) EXPECT_EQ(lhs.z[i], u.z[i]);
      EXPECT_EQ(lhs.t, u.t);
      const HPoint w = group_compose(u, group_inverse(u));
      for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(w.z[i]), 0.0, 1e-15);
      EXPECT_NEAR(w.t, 0.0, 1e-15);
    }
  }
}

TEST(HeisenbergGroup, TwistExample) {
  // ((1), 0) ∘ ((i), 0) = ((1+i), -2): 2 Im(1·conj(i)) = -2.
  const HPoint u{{Complex(1, 0)}, 0.0};
  const HPoint v{{Complex(0, 1)}, 0.0};
  const HPoint w = group_compose(u, v);
  EXPECT_NEAR(std::abs(w.z[0] - Complex(1, 1)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(w.t, -2.0);
}

TEST(HeisenbergGroup, Associativity) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint a = random_point(1, rng), b = random_point(1, rng), c = random_point(1, rng);
    const HPoint lhs = group_compose(group_compose(a, b), c);
    const HPoint rhs = group_compose(a, group_compose(b, c));
    EXPECT_NEAR(std::abs(lhs.z[0] - rhs.z[0]), 0.0, 1e-12);
    EXPECT_NEAR(lhs.t, rhs.t, 1e-12);
  }
}

TEST(HeisenbergGroup, DimensionMismatchThrows) {
  const HPoint u{{Complex(1, 0)}, 0.0};
  const HPoint v{{Complex(1, 0), Complex(0, 0)}, 0.0};
  EXPECT_THROW(group_compose(u, v), std::invalid_argument);
}

TEST(HomogeneousNorm, BasicValues) {
  EXPECT_DOUBLE_EQ(homogeneous_norm(HPoint{{Complex(0, 0)}, 1.0}), 1.0);
  const HPoint zp{{Complex(0.3, -0.4)}, 0.0};
  EXPECT_NEAR(homogeneous_norm(zp), 0.5, 1e-15);
}

TEST(HomogeneousNorm, DilationHomogeneity) {
  Rng rng(3);
  for (double delta : {0.5, 2.0, 7.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const HPoint u = random_point(1, rng, 2.0);
      EXPECT_NEAR(homogeneous_norm(dilate(delta, u)), delta * homogeneous_norm(u),
                  1e-12 * (1.0 + homogeneous_norm(u)));
    }
  }
}

TEST(Dilation, SemigroupAndExample) {
  Rng rng(4);
  const HPoint u = random_point(1, rng);
  const HPoint a = dilate(2.0, dilate(3.0, u));
  const HPoint b = dilate(6.0, u);
  EXPECT_NEAR(std::abs(a.z[0] - b.z[0]), 0.0, 1e-14);
  EXPECT_NEAR(a.t, b.t, 1e-14);

  const HPoint w = dilate(2.0, HPoint{{Complex(1, 0)}, 1.0});
  EXPECT_DOUBLE_EQ(w.z[0].real(), 2.0);
  EXPECT_DOUBLE_EQ(w.t, 4.0);

  EXPECT_THROW(dilate(0.0, u), std::invalid_argument);
  EXPECT_THROW(dilate(-1.0, u), std::invalid_argument);
}

TEST(Cayley, OriginToNorthPoleAndJacobian) {
  for (int n : {1, 2}) {
    const HPoint origin = HPoint::identity(n);
    const SpherePoint xi = cayley(origin);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(xi.xi[i]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(xi.xi[n] - 1.0), 0.0, 1e-15);
    const int Q = 2 * n + 2;
    EXPECT_NEAR(cayley_jacobian(origin), std::pow(2.0, Q - 1), 1e-12);
  }
  EXPECT_NEAR(cayley_jacobian(HPoint::identity(1)), 8.0, 1e-14);
}

TEST(Cayley, RoundTripsAndSphereMembership) {
  Rng rng(5);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 100; ++trial) {
      const HPoint u = random_point(n, rng, 3.0);
      const SpherePoint xi = cayley(u);
      EXPECT_TRUE(xi.on_sphere(1e-12));
      const HPoint back = cayley_inverse(xi);
      const double scale = 1.0 + homogeneous_norm(u);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(back.z[i] - u.z[i]), 0.0, 1e-12 * scale);
      EXPECT_NEAR(back.t, u.t, 1e-12 * scale * scale);
    }
  }
}

TEST(Cayley, JacobianFormulasAgree) {
  Rng rng(6);
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 100; ++trial) {
      const HPoint u = random_point(n, rng, 2.5);
      const double jh = cayley_jacobian(u);
      const double js = cayley_jacobian_sphere(cayley(u), n);
      EXPECT_NEAR(jh, js, 1e-12 * jh);
    }
  }
}

TEST(Cayley, SouthPoleRejected) {
  SpherePoint south;
  south.xi = {Complex(0, 0), Complex(-1, 0)};
  EXPECT_THROW(cayley_inverse(south), std::domain_error);
}

TEST(LeftInvariance, NormOfDifferenceIsTranslationInvariant) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint u = random_point(1, rng), v = random_point(1, rng), w = random_point(1, rng);
    const double d1 = homogeneous_norm(group_compose(group_inverse(u), v));
    const HPoint wu = group_compose(w, u), wv = group_compose(w, v);
    const double d2 = homogeneous_norm(group_compose(group_inverse(wu), wv));
    EXPECT_NEAR(d1, d2, 1e-12 * (1.0 + d1));
  }
}

TEST(Transfer, ConstantPullsBackToExtremalProfile) {
  // F = |J_C|^{(Q-2)/(2Q)} for u == 1 equals 2^{(Q-1)(Q-2)/(2Q)} H pointwise.
  Rng rng(8);
  const int n = 1, Q = 4;
  const double w = (Q - 2.0) / (2.0 * Q);
  auto F = transfer_to_heisenberg(n, [](const SpherePoint&) { return 1.0; }, w);
  const double factor = std::pow(2.0, (Q - 1.0) * (Q - 2.0) / (2.0 * Q));
  for (int trial = 0; trial < 100; ++trial) {
    const HPoint p = random_point(n, rng, 2.0);
    const double z2 = abs_sq(p.z);
    const double H = std::pow((1.0 + z2) * (1.0 + z2) + p.t * p.t, -(Q - 2.0) / 4.0);
    EXPECT_NEAR(F(p), factor * H, 1e-12 * factor * H);
  }
}

TEST(Transfer, UnsupportedExponentThrows) {
  EXPECT_THROW(transfer_to_heisenberg(1, [](const SpherePoint&) { return 1.0; }, 0.3),
               std::invalid_argument);
  EXPECT_THROW(pullback_to_sphere(1, [](const HPoint&) { return 1.0; }, 0.3),
               std::invalid_argument);
}

namespace {
// Tensor quadrature over H^1 in tangent-mapped cylindrical coordinates,
// adequate for integrands decaying like the critical profiles.
double integrate_h1(const std::function<double(const HPoint&)>& f, int nr = 64, int nphi = 48,
                    int nt = 64) {
  std::vector<double> xr, wr, xt, wt;
  gauss_legendre_01(nr, xr, wr);
  gauss_legendre_01(nt, xt, wt);
  double total = 0.0;
  for (int ir = 0; ir < nr; ++ir) {
    const double th = 0.5 * kPi * xr[ir];
    const double rho = std::tan(th);
    const double dr = 0.5 * kPi * wr[ir] / (std::cos(th) * std::cos(th));
    for (int it = 0; it < nt; ++it) {
      const double ps = kPi * (xt[it] - 0.5);
      const double t = std::tan(ps);
      const double dt = kPi * wt[it] / (std::cos(ps) * std::cos(ps));
      double ring = 0.0;
      for (int ip = 0; ip < nphi; ++ip) {
        const double phi = 2.0 * kPi * ip / nphi;
        ring += f(HPoint{{std::polar(rho, phi)}, t});
      }
      total += dr * dt * rho * ring * (2.0 * kPi / nphi);
    }
  }
  return total;
}
}  // namespace

TEST(Transfer, CriticalNormIsPreserved) {
  // ‖u‖_{L^{2Q/(Q-2)}(S³)} = ‖F‖_{L^{2Q/(Q-2)}(H¹)} for a smooth test field.
  const auto ctx = crstab::testing::ctx_n1(4);
  const SpectralField u =
      SpectralField::constant(ctx, 1.0) + real_harmonic(ctx, 1, 1, 0) * 0.2;
  const double sphere_norm = u.lp_norm(4.0, Measure::Surface);

  auto F = transfer_to_heisenberg(
      1, [&](const SpherePoint& p) { return std::real(u.evaluate(p)); }, 0.25);
  const double h_integral = integrate_h1([&](const HPoint& p) {
    const double v = F(p);
    return v * v * v * v;
  });
  const double h_norm = std::pow(h_integral, 0.25);
  EXPECT_NEAR(h_norm, sphere_norm, 1e-3 * sphere_norm);
}
