#include "crstab/quadrature.hpp"

#include <cmath>

namespace crstab {

SpherePoint QuadratureGrid::point(Eigen::Index i) const {
  SpherePoint p;
  p.xi.resize(nodes.cols());
  for (Eigen::Index c = 0; c < nodes.cols(); ++c) p.xi[c] = nodes(i, c);
  return p;
}

void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
  if (m < 1) throw std::invalid_argument("gauss_legendre_01: need at least one node");
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  // Newton on Legendre polynomials over [-1,1], then map to [0,1].
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      if (m == 1) p1 = t;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pm = (m == 1) ? t : p1;
      pp = m * (t * pm - p0) / (t * t - 1.0);
      const double dt = pm / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    const double weight = 2.0 / ((1.0 - t * t) * pp * pp);
    x[i] = 0.5 * (1.0 - t);
    x[m - 1 - i] = 0.5 * (1.0 + t);
    w[i] = 0.5 * weight;
    w[m - 1 - i] = 0.5 * weight;
  }
}

namespace {

// Gauss rule in s exact for polynomials of degree <= sdeg.
void radial_rule(int sdeg, std::vector<double>& x, std::vector<double>& w) {
  const int m = sdeg / 2 + 1;  // 2m-1 >= sdeg
  gauss_legendre_01(m, x, w);
}

QuadratureGrid build_s3(int degree) {
  // ξ1 = sqrt(1-s) e^{iφ1}, ξ2 = sqrt(s) e^{iφ2}, dσ = (1/2) ds dφ1 dφ2.
  const int nphi = degree + 1;
  std::vector<double> xs, ws;
  radial_rule(degree / 2, xs, ws);

  QuadratureGrid g;
  g.n = 1;
  g.exactness = degree;
  const Eigen::Index total = static_cast<Eigen::Index>(xs.size()) * nphi * nphi;
  g.nodes.resize(total, 2);
  g.weights.resize(total);
  const double wphi = 2.0 * kPi / nphi;
  Eigen::Index idx = 0;
  for (size_t is = 0; is < xs.size(); ++is) {
    const double s = xs[is];
    const double r1 = std::sqrt(1.0 - s), r2 = std::sqrt(s);
    const double wt = 0.5 * ws[is] * wphi * wphi;
    for (int i1 = 0; i1 < nphi; ++i1) {
      const double p1 = wphi * i1;
      const Complex e1 = std::polar(r1, p1);
      for (int i2 = 0; i2 < nphi; ++i2) {
        const Complex e2 = std::polar(r2, wphi * i2);
        g.nodes(idx, 0) = e1;
        g.nodes(idx, 1) = e2;
        g.weights(idx) = wt;
        ++idx;
      }
    }
  }
  return g;
}

QuadratureGrid build_s5(int degree) {
  // ξ1 = sqrt(1-s1) e^{iφ1}, ξ2 = sqrt(s1(1-s2)) e^{iφ2}, ξ3 = sqrt(s1 s2) e^{iφ3},
  // dσ = (1/4) s1 ds1 ds2 dφ1 dφ2 dφ3. The s1 density is folded into the
  // integrand degree, hence the +1.
  const int nphi = degree + 1;
  std::vector<double> x1, w1, x2, w2;
  radial_rule(degree / 2 + 1, x1, w1);
  radial_rule(degree / 2, x2, w2);

  QuadratureGrid g;
  g.n = 2;
  g.exactness = degree;
  const Eigen::Index total =
      static_cast<Eigen::Index>(x1.size()) * x2.size() * nphi * nphi * nphi;
  g.nodes.resize(total, 3);
  g.weights.resize(total);
  const double wphi = 2.0 * kPi / nphi;
  Eigen::Index idx = 0;
  for (size_t i = 0; i < x1.size(); ++i) {
    const double s1 = x1[i];
    for (size_t j = 0; j < x2.size(); ++j) {
      const double s2 = x2[j];
      const double r1 = std::sqrt(1.0 - s1);
      const double r2 = std::sqrt(s1 * (1.0 - s2));
      const double r3 = std::sqrt(s1 * s2);
      const double wt = 0.25 * s1 * w1[i] * w2[j] * wphi * wphi * wphi;
      for (int a = 0; a < nphi; ++a) {
        const Complex e1 = std::polar(r1, wphi * a);
        for (int b = 0; b < nphi; ++b) {
          const Complex e2 = std::polar(r2, wphi * b);
          for (int c = 0; c < nphi; ++c) {
            g.nodes(idx, 0) = e1;
            g.nodes(idx, 1) = e2;
            g.nodes(idx, 2) = std::polar(r3, wphi * c);
            g.weights(idx) = wt;
            ++idx;
          }
        }
      }
    }
  }
  return g;
}

}  // namespace

QuadratureGrid sphere_quadrature(int n, int degree) {
  if (degree < 0) throw std::invalid_argument("sphere_quadrature: degree must be >= 0");
  if (n == 1) return build_s3(degree);
  if (n == 2) return build_s5(degree);
  throw std::invalid_argument("sphere_quadrature: only n in {1,2} is supported");
}

int default_exactness(int n, int D) {
  const int q_ceil = (n == 1) ? 4 : 3;
  return std::max({2 * D, q_ceil * D, 8});
}

ZonalRule zonal_rule(int n, int nrad, int nphi) {
  if (n < 1) throw std::invalid_argument("zonal_rule: n must be >= 1");
  ZonalRule z;
  z.n = n;
  z.nphi = nphi;
  std::vector<double> x, w;
  gauss_legendre_01(nrad, x, w);
  // |S^{2n-1}|/2 s^{n-1} density
  double half_lower_sphere = kPi;  // |S^1|/2
  for (int i = 2; i <= n; ++i) half_lower_sphere *= kPi / (i - 1);
  z.s_nodes = x;
  z.s_weights.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i)
    z.s_weights[i] = half_lower_sphere * std::pow(x[i], n - 1) * w[i];
  return z;
}

double ZonalRule::integrate(const std::function<double(Complex)>& F) const {
  double total = 0.0;
  const double dphi = 2.0 * kPi / nphi;
  for (size_t i = 0; i < s_nodes.size(); ++i) {
    const double r = std::sqrt(1.0 - s_nodes[i]);
    double ring = 0.0;
    for (int a = 0; a < nphi; ++a) ring += F(std::polar(r, dphi * a));
    total += s_weights[i] * ring * dphi;
  }
  return total;
}

}  // namespace crstab
