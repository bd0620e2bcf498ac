#include "crstab/functionals.hpp"

#include <cmath>

namespace crstab {

double SharpConstants::transfer_identity_residual() const {
  const double Q = 2.0 * n + 2.0;
  return std::abs(hls_SQ * std::pow(2.0, -n * (Q - 2.0) / Q) - hls_heisenberg);
}

SharpConstants sharp_constants(int n) {
  const CRDimension dim(n);
  const double Q = dim.Q();
  SharpConstants c;
  c.n = n;
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  c.heisenberg_sobolev = 4.0 * kPi * n * n / std::pow(std::pow(2.0, 2 * n) * nfact, 1.0 / (n + 1.0));
  c.sphere_sobolev_factor = dim.half_nu() * dim.half_nu() * std::pow(dim.sphere_measure(), 2.0 / Q);
  const double gamma_up = std::tgamma(0.25 * (Q + 2.0));
  c.hls_SQ = std::pow(dim.sphere_measure(), (Q - 2.0) / Q) * nfact / (gamma_up * gamma_up);
  c.hls_heisenberg =
      std::pow(std::pow(kPi, n + 1) / (std::pow(2.0, n - 1) * nfact), (Q - 2.0) / Q) * nfact /
      (gamma_up * gamma_up);
  return c;
}

double sharp_constant_duality_residual(int n) {
  const CRDimension dim(n);
  const double Q = dim.Q();
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  const double gd = std::tgamma(0.25 * (Q - 2.0));
  const double gu = std::tgamma(0.25 * (Q + 2.0));
  const double two_pin1 = 2.0 * std::pow(kPi, n + 1);
  const double lhs = std::pow(dim.sphere_measure(), -2.0 / Q) / (dim.half_nu() * dim.half_nu()) *
                     (two_pin1 / (gd * gd));
  const double rhs = std::pow(dim.sphere_measure(), (Q - 2.0) / Q) * nfact / (gu * gu);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

double energy(const SpectralField& u, Measure m) {
  const auto& lam = u.context()->lambdas();
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) s += lam(i) * std::norm(u.coeffs()(i));
  if (m == Measure::Probability) s /= u.context()->dim().sphere_measure();
  return s;
}

double energy_zero(const SpectralField& u, Measure m) {
  const double l00 = u.context()->dim().half_nu() * u.context()->dim().half_nu();
  return energy(u, m) - l00 * u.l2_norm_sq(m);
}

double energy_inner(const SpectralField& u, const SpectralField& v, Measure m) {
  const auto& lam = u.context()->lambdas();
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) s += lam(i) * u.coeffs()(i) * std::conj(v.coeffs()(i));
  double r = s.real();
  if (m == Measure::Probability) r /= u.context()->dim().sphere_measure();
  return r;
}

void t_node_values(const SpectralField& u, Eigen::MatrixXcd& t_vals, Eigen::MatrixXcd& tbar_vals) {
  const auto& ctx = *u.context();
  const int nv = ctx.dim().complex_dim();
  const ComplexPolynomial p = u.to_polynomial();
  const Eigen::Index m = ctx.num_nodes();
  t_vals.resize(m, nv);
  tbar_vals.resize(m, nv);
  std::vector<Complex> pt(nv);
  for (int j = 0; j < nv; ++j) {
    const ComplexPolynomial tj = apply_T(p, j, false, nv);
    const ComplexPolynomial tbj = apply_T(p, j, true, nv);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (int c = 0; c < nv; ++c) pt[c] = ctx.grid().nodes(i, c);
      t_vals(i, j) = tj.evaluate(std::span<const Complex>(pt));
      tbar_vals(i, j) = tbj.evaluate(std::span<const Complex>(pt));
    }
  }
}

double energy_quadrature(const SpectralField& u, Measure m) {
  const auto& ctx = *u.context();
  Eigen::MatrixXcd tv, tbv;
  t_node_values(u, tv, tbv);
  const Eigen::VectorXcd& uv = u.node_values();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ctx.num_nodes(); ++i) {
    double g = 0.0;
    for (int j = 0; j < ctx.dim().complex_dim(); ++j) g += std::norm(tv(i, j)) + std::norm(tbv(i, j));
    s += ctx.weights()(i) * (0.5 * g + 0.25 * ctx.dim().n * ctx.dim().n * std::norm(uv(i)));
  }
  if (m == Measure::Probability) s /= ctx.dim().sphere_measure();
  return s;
}

DeficitReport sobolev_deficit(const SpectralField& u, Measure m) {
  const auto& dim = u.context()->dim();
  if (!u.is_real()) throw std::invalid_argument("sobolev_deficit: field must be real-valued");
  const double q = dim.q();
  const double lq = u.lp_norm(q, m);
  if (!(lq > 0.0)) throw std::invalid_argument("sobolev_deficit: zero field");
  DeficitReport r;
  r.n = dim.n;
  r.measure_convention = m;
  r.basis_degree = u.context()->basis().max_degree;
  r.grid_exactness = u.context()->grid().exactness;
  r.lq_norm = lq;
  r.energy = energy(u, m);
  const double l00 = dim.half_nu() * dim.half_nu();
  const double factor =
      (m == Measure::Surface) ? l00 * std::pow(dim.sphere_measure(), 2.0 / dim.Q()) : l00;
  r.rhs_term = factor * lq * lq;
  r.deficit = r.energy - r.rhs_term;
  return r;
}

DeficitReport heisenberg_deficit(const SpectralField& u, double weight_exponent) {
  const auto& dim = u.context()->dim();
  const double Q = dim.Q();
  if (std::abs(weight_exponent - (Q - 2.0) / (2.0 * Q)) > 1e-14)
    throw std::invalid_argument("heisenberg_deficit: wrong weight exponent for the Sobolev transfer");
  const double gradient_factor = std::pow(2.0, 2.0 + 1.0 / (dim.n + 1.0));
  DeficitReport sphere = sobolev_deficit(u, Measure::Surface);
  DeficitReport r = sphere;
  r.energy = gradient_factor * sphere.energy;
  r.rhs_term = sharp_constants(dim.n).heisenberg_sobolev * sphere.lq_norm * sphere.lq_norm;
  r.deficit = r.energy - r.rhs_term;
  return r;
}

}  // namespace crstab
