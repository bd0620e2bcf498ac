#include "crstab/heisenberg.hpp"

#include <cmath>

namespace crstab::heis {

HPoint group_compose(const HPoint& u, const HPoint& v) {
  if (u.z.size() != v.z.size()) throw std::invalid_argument("group_compose: dimension mismatch");
  HPoint w;
  w.z.resize(u.z.size());
  double twist = 0.0;
  for (size_t i = 0; i < u.z.size(); ++i) {
    w.z[i] = u.z[i] + v.z[i];
    twist += std::imag(u.z[i] * std::conj(v.z[i]));
  }
  w.t = u.t + v.t + 2.0 * twist;
  return w;
}

HPoint group_inverse(const HPoint& u) {
  HPoint w = u;
  for (auto& c : w.z) c = -c;
  w.t = -u.t;
  return w;
}

double homogeneous_norm(const HPoint& u) {
  const double z2 = abs_sq(u.z);
  return std::pow(z2 * z2 + u.t * u.t, 0.25);
}

HPoint dilate(double delta, const HPoint& u) {
  if (!(delta > 0.0)) throw std::invalid_argument("dilate: delta must be positive");
  HPoint w = u;
  for (auto& c : w.z) c *= delta;
  w.t = delta * delta * u.t;
  return w;
}

SpherePoint cayley(const HPoint& u) {
  const double z2 = abs_sq(u.z);
  const Complex denom(1.0 + z2, -u.t);
  SpherePoint xi;
  xi.xi.resize(u.z.size() + 1);
  for (size_t i = 0; i < u.z.size(); ++i) xi.xi[i] = 2.0 * u.z[i] / denom;
  xi.xi.back() = Complex(1.0 - z2, u.t) / denom;
  return xi;
}

HPoint cayley_inverse(const SpherePoint& xi) {
  const Complex last = xi.xi.back();
  const Complex denom = 1.0 + last;
  if (std::abs(denom) < 1e-14) throw std::domain_error("cayley_inverse: south pole is not in the domain");
  HPoint u;
  u.z.resize(xi.xi.size() - 1);
  for (size_t i = 0; i + 1 < xi.xi.size(); ++i) u.z[i] = xi.xi[i] / denom;
  // The t-component sign is fixed by requiring cayley_inverse(cayley(u)) == u:
  // (1-ξ_{n+1})/(1+ξ_{n+1}) evaluates to |z|² - it along the forward map.
  u.t = -std::imag((1.0 - last) / denom);
  return u;
}

double cayley_jacobian(const HPoint& u) {
  const int Q = 2 * u.n() + 2;
  const double z2 = abs_sq(u.z);
  const double base = (1.0 + z2) * (1.0 + z2) + u.t * u.t;
  return std::pow(2.0, Q - 1) * std::pow(base, -0.5 * Q);
}

double cayley_jacobian_sphere(const SpherePoint& xi, int n) {
  const int Q = 2 * n + 2;
  return 0.5 * std::pow(std::abs(1.0 + xi.xi.back()), Q);
}

namespace {
bool valid_weight(int n, double w) {
  const double Q = 2.0 * n + 2.0;
  return std::abs(w - (Q - 2.0) / (2.0 * Q)) < 1e-14 || std::abs(w - (Q + 2.0) / (2.0 * Q)) < 1e-14;
}
}  // namespace

HeisenbergFunction transfer_to_heisenberg(int n, SphereFunction u, double weight_exponent) {
  if (!valid_weight(n, weight_exponent))
    throw std::invalid_argument("transfer_to_heisenberg: weight exponent must be (Q-2)/(2Q) or (Q+2)/(2Q)");
  return [u = std::move(u), weight_exponent](const HPoint& p) {
    return std::pow(cayley_jacobian(p), weight_exponent) * u(cayley(p));
  };
}

SphereFunction pullback_to_sphere(int n, HeisenbergFunction h, double weight_exponent) {
  if (!valid_weight(n, weight_exponent))
    throw std::invalid_argument("pullback_to_sphere: weight exponent must be (Q-2)/(2Q) or (Q+2)/(2Q)");
  return [n, h = std::move(h), weight_exponent](const SpherePoint& xi) {
    const HPoint p = cayley_inverse(xi);
    return h(p) / std::pow(cayley_jacobian_sphere(xi, n), weight_exponent);
  };
}

}  // namespace crstab::heis
