#include "crstab/hls.hpp"

#include <sstream>

namespace crstab {

double kernel_eigenvalue(int j, int k, double alpha, int n) {
  if (j < 0 || k < 0) throw std::invalid_argument("kernel_eigenvalue: j,k must be >= 0");
  if (!(alpha > -1.0 && alpha < 0.5 * (n + 1)))
    throw std::invalid_argument("kernel_eigenvalue: alpha out of (-1, (n+1)/2)");
  // Log-Gamma arithmetic; Γ(x) < 0 only for x in (-1,0), i.e. when j = 0 and
  // alpha < 0 (Γ²(α) is positive either way).
  const double log_val = std::log(2.0) + (n + 1) * std::log(kPi) +
                         std::lgamma(n + 1.0 - 2.0 * alpha) + std::lgamma(j + alpha) +
                         std::lgamma(k + alpha) - 2.0 * std::lgamma(std::abs(alpha)) -
                         std::lgamma(j + n + 1.0 - alpha) - std::lgamma(k + n + 1.0 - alpha);
  double sign = 1.0;
  if (alpha < 0.0) {
    if (j == 0) sign = -sign;
    if (k == 0) sign = -sign;
    // Γ²(α): Γ(α) < 0 for α in (-1,0), squared away. lgamma handles |Γ|.
  }
  return sign * std::exp(log_val);
}

KernelSpectrum kernel_spectrum(double alpha, int n, int D) {
  KernelSpectrum s;
  s.alpha = alpha;
  s.n = n;
  s.max_degree = D;
  s.table = Eigen::MatrixXd::Zero(D + 1, D + 1);
  for (int j = 0; j <= D; ++j)
    for (int k = 0; k + j <= D; ++k) s.table(j, k) = kernel_eigenvalue(j, k, alpha, n);
  return s;
}

std::string KernelSpectrum::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "j,k,E_jk\n";
  for (int j = 0; j <= max_degree; ++j)
    for (int k = 0; k + j <= max_degree; ++k) os << j << ',' << k << ',' << table(j, k) << '\n';
  return os.str();
}

double hls_energy(const SpectralField& g) {
  const auto& ctx = g.context();
  const int n = ctx->dim().n;
  const double alpha = 0.25 * (ctx->dim().Q() - 2.0);
  double s = 0.0;
  for (int i = 0; i < ctx->num_elements(); ++i) {
    const auto& e = ctx->basis().elements[i];
    s += kernel_eigenvalue(e.j, e.k, alpha, n) * std::norm(g.coeffs()(i));
  }
  return s;
}

DeficitReport hls_deficit(const SpectralField& g) {
  const auto& ctx = g.context();
  const CRDimension& dim = ctx->dim();
  if (!g.is_real()) throw std::invalid_argument("hls_deficit: field must be real-valued");
  const double Q = dim.Q();
  const double p = 2.0 * Q / (Q + 2.0);
  DeficitReport r;
  r.n = dim.n;
  r.measure_convention = Measure::Surface;
  r.basis_degree = ctx->basis().max_degree;
  r.grid_exactness = ctx->grid().exactness;
  r.lq_norm = g.lp_norm(p, Measure::Surface);
  if (!(r.lq_norm > 0.0)) throw std::invalid_argument("hls_deficit: zero field");
  const double gu = std::tgamma(0.25 * (Q + 2.0));
  double nfact = 1.0;
  for (int i = 2; i <= dim.n; ++i) nfact *= i;
  const double factor = std::pow(dim.sphere_measure(), (2.0 - Q) / Q) * gu * gu / nfact;
  r.energy = r.lq_norm * r.lq_norm;
  r.rhs_term = factor * hls_energy(g);
  r.deficit = r.energy - r.rhs_term;
  return r;
}

SpectralField inverse_sublaplacian(const SpectralField& v) {
  const auto& lam = v.context()->lambdas();
  Eigen::VectorXcd c = v.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) /= lam(i);
  return SpectralField(v.context(), std::move(c));
}

double legendre_dual_constant(double beta, int Q) {
  if (beta < 0.0) throw std::invalid_argument("legendre_dual_constant: beta must be >= 0");
  const double qd = static_cast<double>(Q);
  return std::min(4.0 * beta * (qd + 2.0) / (qd * (qd - 2.0)), 1.0) * (qd + 2.0) /
         (2.0 * (qd - 2.0));
}

HlsStabilityReport hls_stability_check(const SpectralField& g, double beta,
                                       const DistanceOptions& dist_opts) {
  HlsStabilityReport rep;
  rep.deficit = hls_deficit(g);
  rep.distance = distance_to_hls_manifold(g, dist_opts);
  rep.beta = beta;
  rep.dual_constant = legendre_dual_constant(beta, g.context()->dim().Q());
  const double scale = rep.deficit.lq_norm * rep.deficit.lq_norm;
  rep.indeterminate = rep.distance.squared_distance <= 1e-12 * std::max(1.0, scale);
  if (!rep.indeterminate) {
    rep.ratio = rep.deficit.deficit / rep.distance.squared_distance;
    rep.conditional_holds = rep.ratio >= rep.dual_constant;
  }
  return rep;
}

}  // namespace crstab
