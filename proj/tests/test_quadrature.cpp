#include <gtest/gtest.h>

#include <crstab/quadrature.hpp>
#include <crstab/polynomial.hpp>

#include "test_support.hpp"

using namespace crstab;

TEST(GaussLegendre, UnitIntervalMoments) {
  std::vector<double> x, w;
  for (int m : {1, 2, 5, 12, 40}) {
    gauss_legendre_01(m, x, w);
    for (int k = 0; k <= 2 * m - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += w[i] * std::pow(x[i], k);
      EXPECT_NEAR(s, 1.0 / (k + 1.0), 1e-14) << "m=" << m << " k=" << k;
    }
  }
}

TEST(SphereQuadrature, TotalMass) {
  for (int n : {1, 2}) {
    const QuadratureGrid g = sphere_quadrature(n, 8);
    EXPECT_NEAR(g.total_mass(), CRDimension(n).sphere_measure(),
                1e-13 * CRDimension(n).sphere_measure());
    EXPECT_GT(g.weights.minCoeff(), 0.0);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(g.size(), 50); ++i)
      EXPECT_TRUE(g.point(i).on_sphere(1e-13));
  }
}

namespace {
void check_monomial_exactness(int n, int degree) {
  const QuadratureGrid g = sphere_quadrature(n, degree);
  const int nv = n + 1;
  // enumerate all (α, β) with |α|+|β| <= degree
  std::vector<std::vector<int>> multis;
  std::vector<int> cur(nv, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == nv - 1) {
      cur[pos] = rem;
      multis.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  double worst = 0.0;
  for (int da = 0; da <= degree; ++da) {
    multis.clear();
    rec(0, da);
    auto alphas = multis;
    for (int db = 0; db + da <= degree; ++db) {
      multis.clear();
      rec(0, db);
      for (const auto& a : alphas) {
        for (const auto& b : multis) {
          Complex s = 0.0;
          for (Eigen::Index i = 0; i < g.size(); ++i) {
            Complex v = 1.0;
            for (int c = 0; c < nv; ++c) {
              for (int e = 0; e < a[c]; ++e) v *= g.nodes(i, c);
              for (int e = 0; e < b[c]; ++e) v *= std::conj(g.nodes(i, c));
            }
            s += g.weights(i) * v;
          }
          const double exact =
              monomial_integral(std::span<const int>(a), std::span<const int>(b), n);
          worst = std::max(worst, std::abs(s - exact));
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-12) << "n=" << n << " degree=" << degree;
}
}  // namespace

TEST(SphereQuadrature, MonomialExactnessN1) { check_monomial_exactness(1, 12); }
TEST(SphereQuadrature, MonomialExactnessN2) { check_monomial_exactness(2, 7); }

TEST(SphereQuadrature, UnsupportedDimensionThrows) {
  EXPECT_THROW(sphere_quadrature(3, 4), std::invalid_argument);
  EXPECT_THROW(sphere_quadrature(1, -1), std::invalid_argument);
}

TEST(ZonalRule, MatchesFullGridOnZonalIntegrands) {
  for (int n : {1, 2}) {
    const QuadratureGrid g = sphere_quadrature(n, 16);
    const ZonalRule z = zonal_rule(n, 24, 32);
    auto F = [](Complex z1) {
      return std::exp(-std::norm(1.5 - z1)) + 0.3 * std::real(z1);
    };
    double full = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) full += g.weights(i) * F(g.nodes(i, 0));
    EXPECT_NEAR(z.integrate(F), full, 1e-9 * std::abs(full));
  }
}
