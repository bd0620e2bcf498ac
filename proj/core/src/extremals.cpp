#include "crstab/extremals.hpp"

#include <random>

#include "crstab/nelder_mead.hpp"

namespace crstab {

ExtremalField::ExtremalField(CRDimension dim, ExtremalParams p, ExtremalKind kind)
    : dim_(dim), params_(std::move(p)), kind_(kind) {
  if (static_cast<int>(params_.eta.size()) != dim_.complex_dim())
    throw std::invalid_argument("ExtremalField: eta must have n+1 components");
  if (params_.eta_norm() >= 1.0) throw std::invalid_argument("ExtremalField: |eta| must be < 1");
  s_ = (kind == ExtremalKind::Sobolev) ? 0.5 * (dim_.Q() - 2.0) : 0.5 * (dim_.Q() + 2.0);
}

double ExtremalField::value(const SpherePoint& xi) const {
  // w = 1 - η̄·ξ; hermitian_dot(ξ, η) = Σ ξ_i conj(η_i) = η̄·ξ.
  const Complex w = 1.0 - hermitian_dot(xi.xi, params_.eta);
  return params_.c * std::pow(std::norm(w), -0.5 * s_);
}

void ExtremalField::eval_on_grid(const QuadratureGrid& grid, Eigen::VectorXd& values,
                                 Eigen::MatrixXcd& t_vals) const {
  const int nv = dim_.complex_dim();
  Eigen::VectorXcd etabar(nv);
  for (int j = 0; j < nv; ++j) etabar(j) = std::conj(params_.eta[j]);
  const Eigen::VectorXcd u = grid.nodes * etabar;  // u_m = η̄·ξ_m
  const Eigen::Index m = grid.size();
  values.resize(m);
  t_vals.resize(m, nv);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex w = 1.0 - u(i);
    const double w2 = std::norm(w);
    const double pw = std::pow(w2, -0.5 * s_);
    values(i) = params_.c * pw;
    const Complex pref = params_.c * (0.5 * s_) * pw / w2 * std::conj(w);
    for (int j = 0; j < nv; ++j)
      t_vals(i, j) = pref * (etabar(j) - std::conj(grid.nodes(i, j)) * u(i));
  }
}

int ExtremalField::auto_nphi(int nphi) const {
  if (nphi > 0) return nphi;
  const double rho = std::min(params_.eta_norm(), 0.999);
  if (rho < 0.05) return 16;
  const int np = static_cast<int>(std::ceil(std::log(1e-14) / std::log(rho)));
  return std::clamp(np, 16, 2048);
}

double ExtremalField::energy_quadrature(int nrad, int nphi) const {
  // Rotate η to |η| e_1; the integrand depends on ξ through t = η̄·ξ only.
  const double rho = params_.eta_norm();
  const double rho2 = rho * rho;
  const ZonalRule rule = zonal_rule(dim_.n, nrad, auto_nphi(nphi));
  const double c2 = params_.c * params_.c;
  const double half_s = 0.5 * s_;
  const double n2q = 0.25 * dim_.n * dim_.n;
  return rule.integrate([&](Complex z1) {
    const Complex t = rho * z1;
    const double w2 = std::norm(1.0 - t);
    return c2 * half_s * half_s * std::pow(w2, -s_ - 1.0) * (rho2 - std::norm(t)) +
           n2q * c2 * std::pow(w2, -s_);
  });
}

double ExtremalField::lp_norm(double p, int nrad, int nphi) const {
  if (p < 1.0) throw std::invalid_argument("ExtremalField::lp_norm: p must be >= 1");
  const double rho = params_.eta_norm();
  const ZonalRule rule = zonal_rule(dim_.n, nrad, auto_nphi(nphi));
  const double cp = std::pow(std::abs(params_.c), p);
  const double e = -0.5 * s_ * p;
  const double total =
      rule.integrate([&](Complex z1) { return cp * std::pow(std::norm(1.0 - rho * z1), e); });
  return std::pow(total, 1.0 / p);
}

double ExtremalField::natural_norm_pow_closed_form() const {
  const double p = static_cast<double>(dim_.Q()) / s_;
  const double rho2 = abs_sq(params_.eta);
  return std::pow(std::abs(params_.c), p) * dim_.sphere_measure() *
         std::pow(1.0 - rho2, -0.5 * dim_.Q());
}

double sphere_kernel_integral(double alpha, int n, double eta_norm_sq) {
  if (eta_norm_sq < 0.0 || eta_norm_sq >= 1.0)
    throw std::invalid_argument("sphere_kernel_integral: |eta|^2 must be in [0,1)");
  // |S| ₂F₁(α, α; n+1; x); geometric tail with ratio x.
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 200000; ++k) {
    term *= (alpha + k) * (alpha + k) / ((n + 1.0 + k) * (k + 1.0)) * eta_norm_sq;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return CRDimension(n).sphere_measure() * sum;
}

DeficitReport extremal_sobolev_deficit(const CRDimension& dim, const ExtremalParams& p, int nrad,
                                       int nphi) {
  const ExtremalField g(dim, p, ExtremalKind::Sobolev);
  DeficitReport r;
  r.n = dim.n;
  r.measure_convention = Measure::Surface;
  r.basis_degree = -1;
  r.grid_exactness = -1;
  r.energy = g.energy_quadrature(nrad, nphi);
  r.lq_norm = g.lp_norm(dim.q(), nrad, nphi);
  const double l00 = dim.half_nu() * dim.half_nu();
  r.rhs_term = l00 * std::pow(dim.sphere_measure(), 2.0 / dim.Q()) * r.lq_norm * r.lq_norm;
  r.deficit = r.energy - r.rhs_term;
  return r;
}

namespace {

Eigen::VectorXd chart_from_eta(const CVector& eta) {
  const int nv = static_cast<int>(eta.size());
  Eigen::VectorXd v(2 * nv);
  double rho = std::sqrt(abs_sq(eta));
  rho = std::min(rho, 1.0 - 1e-12);
  const double scale = (rho > 0) ? std::atanh(rho) / rho : 0.0;
  for (int j = 0; j < nv; ++j) {
    v(2 * j) = eta[j].real() * scale;
    v(2 * j + 1) = eta[j].imag() * scale;
  }
  return v;
}

// η chart: v ∈ ℝ^{2(n+1)} -> η = tanh(|v|) v̂, radius capped.
CVector eta_from_chart(const Eigen::VectorXd& v, double cap, bool* at_cap) {
  const int nv = static_cast<int>(v.size()) / 2;
  const double r = v.norm();
  double rho = std::tanh(r);
  if (at_cap) *at_cap = rho >= cap;
  rho = std::min(rho, cap);
  CVector eta(nv, Complex(0, 0));
  if (r > 0) {
    const double scale = rho / r;
    for (int j = 0; j < nv; ++j) eta[j] = Complex(v(2 * j), v(2 * j + 1)) * scale;
  }
  return eta;
}

// Node data about u that the objective needs; surface measure throughout.
struct Probe {
  ContextPtr ctx;
  double self_energy = 0.0;
  Eigen::VectorXd u_nodes;
  Eigen::VectorXd lu_nodes;   // L u at nodes (spectral route); empty for extremal probes
  Eigen::MatrixXcd tu_nodes;  // T_j u at nodes (closed-form route); empty otherwise
};

Probe make_probe(const SpectralField& u) {
  if (!u.is_real()) throw std::invalid_argument("distance: field must be real-valued");
  Probe p;
  p.ctx = u.context();
  p.self_energy = energy(u, Measure::Surface);
  p.u_nodes = u.real_node_values();
  const Eigen::VectorXcd lam_c = u.context()->lambdas().cast<Complex>().cwiseProduct(u.coeffs());
  p.lu_nodes = (u.context()->values() * lam_c).real();
  return p;
}

Probe make_probe(const ExtremalField& u, ContextPtr ctx) {
  Probe p;
  p.ctx = std::move(ctx);
  Eigen::VectorXd vals;
  Eigen::MatrixXcd tv;
  u.eval_on_grid(p.ctx->grid(), vals, tv);
  p.u_nodes = vals;
  p.tu_nodes = tv;
  // Same-grid self-energy so the zero-distance case cancels exactly.
  const auto& w = p.ctx->weights();
  double e = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double g = 0.0;
    for (int j = 0; j < tv.cols(); ++j) g += std::norm(tv(i, j));
    e += w(i) * (g + 0.25 * p.ctx->dim().n * p.ctx->dim().n * vals(i) * vals(i));
  }
  p.self_energy = e;
  return p;
}

// <u, g_{1,η}>_E and E[g_{1,η}] on the probe grid. For real a, b:
// E(a,b) = Σ_m w_m [Σ_j Re(T_j a conj(T_j b)) + (n²/4) a b].
void sobolev_pairing(const Probe& p, const CVector& eta, double& inner_ug, double& energy_g) {
  const ExtremalField g(p.ctx->dim(), ExtremalParams{1.0, eta}, ExtremalKind::Sobolev);
  Eigen::VectorXd gv;
  Eigen::MatrixXcd gt;
  g.eval_on_grid(p.ctx->grid(), gv, gt);
  const auto& w = p.ctx->weights();
  const double n2q = 0.25 * p.ctx->dim().n * p.ctx->dim().n;
  double eg = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < gt.cols(); ++j) s += std::norm(gt(i, j));
    eg += w(i) * (s + n2q * gv(i) * gv(i));
  }
  energy_g = eg;
  double iug = 0.0;
  if (p.tu_nodes.size() > 0) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < gt.cols(); ++j) s += (p.tu_nodes(i, j) * std::conj(gt(i, j))).real();
      iug += w(i) * (s + n2q * p.u_nodes(i) * gv(i));
    }
  } else {
    iug = (w.array() * p.lu_nodes.array() * gv.array()).sum();
  }
  inner_ug = iug;
}

struct ObjectiveEval {
  double value = 0.0;
  double c_star = 0.0;
};

DistanceResult run_distance(const Probe& probe, const DistanceOptions& opts, bool hls_objective,
                            double hls_p) {
  const int nv = probe.ctx->dim().complex_dim();
  const auto& w = probe.ctx->weights();

  double u_scale;
  if (hls_objective) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
      s += w(i) * std::pow(std::abs(probe.u_nodes(i)), hls_p);
    u_scale = std::pow(s, 2.0 / hls_p);  // ‖u‖_p²
  } else {
    u_scale = probe.self_energy;
  }

  long total_evals = 0;
  auto objective = [&](const Eigen::VectorXd& v) -> ObjectiveEval {
    const CVector eta = eta_from_chart(v, opts.eta_cap, nullptr);
    ObjectiveEval r;
    if (!hls_objective) {
      double iug = 0.0, eg = 0.0;
      sobolev_pairing(probe, eta, iug, eg);
      r.c_star = iug / eg;
      r.value = probe.self_energy - iug * iug / eg;
    } else {
      const ExtremalField g(probe.ctx->dim(), ExtremalParams{1.0, eta}, ExtremalKind::HLS);
      Eigen::VectorXd gv;
      Eigen::MatrixXcd gt;
      g.eval_on_grid(probe.ctx->grid(), gv, gt);
      auto norm_p_sq = [&](double c) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < w.size(); ++i)
          s += w(i) * std::pow(std::abs(probe.u_nodes(i) - c * gv(i)), hls_p);
        return std::pow(s, 2.0 / hls_p);
      };
      const double norm_u = std::sqrt(u_scale);
      double norm_g = 0.0;
      for (Eigen::Index i = 0; i < w.size(); ++i) norm_g += w(i) * std::pow(std::abs(gv(i)), hls_p);
      norm_g = std::pow(norm_g, 1.0 / hls_p);
      const double cmax = 2.0 * norm_u / norm_g + 1.0;
      r.c_star = golden_section(norm_p_sq, -cmax, cmax, 1e-10 * cmax);
      r.value = norm_p_sq(r.c_star);
    }
    return r;
  };

  std::mt19937_64 rng(opts.seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };

  DistanceResult best;
  best.seed = opts.seed;
  best.squared_distance = std::numeric_limits<double>::infinity();
  best.u_scale = u_scale;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Eigen::VectorXd v0 = Eigen::VectorXd::Zero(2 * nv);
    if (restart == 0 && opts.warm_start_eta)
      v0 = chart_from_eta(*opts.warm_start_eta);
    else if (restart > 0)
      for (int i = 0; i < 2 * nv; ++i) v0(i) = 2.4 * (uniform() - 0.5);
    NelderMeadResult nm = nelder_mead(
        [&](const Eigen::VectorXd& v) {
          ++total_evals;
          return objective(v).value;
        },
        v0, 0.3, opts.max_evals, opts.xtol);
    if (nm.f < best.squared_distance) {
      const ObjectiveEval fin = objective(nm.x);
      bool at_cap = false;
      const CVector eta = eta_from_chart(nm.x, opts.eta_cap, &at_cap);
      best.squared_distance = nm.f;
      best.argmin = ExtremalParams{fin.c_star, eta};
      best.converged = nm.converged && !at_cap;
    }
    best.restarts_used = restart + 1;
  }
  best.total_evaluations = total_evals;
  if (best.squared_distance < 0.0 && best.squared_distance > -1e-9 * std::max(1.0, u_scale))
    best.squared_distance = 0.0;  // quadrature round-off at an exact minimum
  return best;
}

}  // namespace

DistanceResult distance_to_sobolev_manifold(const SpectralField& u, const DistanceOptions& opts) {
  return run_distance(make_probe(u), opts, false, 0.0);
}

DistanceResult distance_to_sobolev_manifold(const ExtremalField& u, ContextPtr ctx,
                                            const DistanceOptions& opts) {
  return run_distance(make_probe(u, std::move(ctx)), opts, false, 0.0);
}

DistanceResult distance_to_hls_manifold(const SpectralField& u, const DistanceOptions& opts) {
  const double p = 2.0 * u.context()->dim().Q() / (u.context()->dim().Q() + 2.0);
  return run_distance(make_probe(u), opts, true, p);
}

DistanceResult distance_to_hls_manifold(const ExtremalField& u, ContextPtr ctx,
                                        const DistanceOptions& opts) {
  const double p = 2.0 * ctx->dim().Q() / (ctx->dim().Q() + 2.0);
  return run_distance(make_probe(u, std::move(ctx)), opts, true, p);
}

heis::HeisenbergFunction heisenberg_extremal(ExtremalKind kind, double c, double delta,
                                             const heis::HPoint& a) {
  if (!(delta > 0.0)) throw std::invalid_argument("heisenberg_extremal: delta must be positive");
  const int n = a.n();
  const double Q = 2.0 * n + 2.0;
  const double expo = (kind == ExtremalKind::Sobolev) ? -(Q - 2.0) / 4.0 : -(Q + 2.0) / 4.0;
  const heis::HPoint a_inv = heis::group_inverse(a);
  return [c, delta, a_inv, expo](const heis::HPoint& u) {
    const heis::HPoint v = heis::dilate(delta, heis::group_compose(a_inv, u));
    const double z2 = abs_sq(v.z);
    return c * std::pow((1.0 + z2) * (1.0 + z2) + v.t * v.t, expo);
  };
}

ExtremalParams sphere_params_from_heisenberg(ExtremalKind kind, double c, double delta,
                                             const heis::HPoint& a) {
  // With h(z,t) = 1+|z|²-it (the Cayley denominator),
  //   h(δ(a⁻¹w)) = δ² h(w) + (1-δ²+δ²|z_a|²+iδ² t_a) - 2δ² Σ conj(z_a,i) z_i,
  // affine in (h, z); matching against β(1-η̄·ξ) h(w) yields η and the scale
  // β = (1+δ²+δ²|z_a|²+iδ² t_a)/2.
  const int n = a.n();
  const double Q = 2.0 * n + 2.0;
  const double d2 = delta * delta;
  const double za2 = abs_sq(a.z);
  const Complex beta = 0.5 * Complex(1.0 + d2 + d2 * za2, d2 * a.t);
  const Complex A = Complex(1.0 - d2 + d2 * za2, d2 * a.t);
  ExtremalParams p;
  p.eta.resize(n + 1);
  for (int i = 0; i < n; ++i) p.eta[i] = d2 * a.z[i] / std::conj(beta);
  p.eta[n] = -std::conj(A) / (2.0 * std::conj(beta));
  const double s = (kind == ExtremalKind::Sobolev) ? 0.5 * (Q - 2.0) : 0.5 * (Q + 2.0);
  const double wexp = (kind == ExtremalKind::Sobolev) ? (Q - 2.0) / (2.0 * Q) : (Q + 2.0) / (2.0 * Q);
  p.c = c * std::pow(2.0, -(Q - 1.0) * wexp) * std::pow(std::abs(beta), -s);
  return p;
}

}  // namespace crstab
