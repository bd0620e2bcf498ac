#include "crstab/local_stability.hpp"

#include <cmath>

namespace crstab {

CutDecomposition cut(const Eigen::VectorXd& r, double gamma, double M) {
  if (!(gamma > 0.0 && gamma < M)) throw std::invalid_argument("cut: need 0 < gamma < M");
  const double rmin = r.minCoeff();
  if (rmin < -1.0)
    throw std::domain_error("cut: r < -1 at a node (min " + std::to_string(rmin) + ")");
  CutDecomposition d;
  const Eigen::Index m = r.size();
  d.r1.resize(m);
  d.r2.resize(m);
  d.r3.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = r(i);
    if (v <= gamma) {
      d.r1(i) = v;
      d.r2(i) = 0.0;
      d.r3(i) = 0.0;
    } else if (v <= M) {
      d.r1(i) = gamma;
      d.r2(i) = v - gamma;
      d.r3(i) = 0.0;
    } else {
      d.r1(i) = gamma;
      d.r2(i) = M - gamma;
      d.r3(i) = v - M;
    }
  }
  return d;
}

namespace {
double cut_lhs(double r, double q) { return std::pow(1.0 + r, q) - 1.0 - q * r; }

double cut_rhs(double r1, double r2, double r3, double q, double gamma, double eps, double C) {
  const double theta = q - 2.0;
  const double qq = 0.5 * q * (q - 1.0);
  return (qq + 2.0 * gamma * theta) * r1 * r1 + (qq + C * theta) * r2 * r2 + 2.0 * r1 * r2 +
         2.0 * (r1 + r2) * r3 + (1.0 + eps * theta) * std::pow(r3, q);
}
}  // namespace

bool pointwise_cut_bound(double r, double q, double gamma, double eps, double M, double C) {
  if (r < -1.0) throw std::domain_error("pointwise_cut_bound: r must be >= -1");
  if (!(q >= 2.0 && q <= 3.0)) throw std::invalid_argument("pointwise_cut_bound: q must be in [2,3]");
  const double r1 = std::min(r, gamma);
  const double r2 = std::min(std::max(r - gamma, 0.0), M - gamma);
  const double r3 = std::max(r - M, 0.0);
  return cut_lhs(r, q) <= cut_rhs(r1, r2, r3, q, gamma, eps, C) + 1e-12;
}

double estimate_cut_constant(double gamma, double eps, double M, const std::vector<double>& q_grid,
                             long grid_points, double cap) {
  if (!(gamma > 0.0 && gamma < 0.5 * M))
    throw std::invalid_argument("estimate_cut_constant: need 0 < gamma < M/2");
  double needed = 0.0;
  const double lo = -1.0, hi = 10.0 * M;
  for (double q : q_grid) {
    const double theta = q - 2.0;
    if (theta <= 0.0) continue;  // at q = 2 the bound is an identity; C is unconstrained
    const double qq = 0.5 * q * (q - 1.0);
    for (long i = 0; i <= grid_points; ++i) {
      const double r = lo + (hi - lo) * static_cast<double>(i) / grid_points;
      const double r2 = std::min(std::max(r - gamma, 0.0), M - gamma);
      if (r2 <= 0.0) continue;
      const double r1 = gamma;
      const double r3 = std::max(r - M, 0.0);
      const double rest = (qq + 2.0 * gamma * theta) * r1 * r1 + qq * r2 * r2 + 2.0 * r1 * r2 +
                          2.0 * (r1 + r2) * r3 + (1.0 + eps * theta) * std::pow(r3, q);
      const double c_req = (cut_lhs(r, q) - rest) / (theta * r2 * r2);
      needed = std::max(needed, c_req);
      if (needed > cap)
        throw std::runtime_error("estimate_cut_constant: no C below cap for q=" + std::to_string(q));
    }
  }
  return 1.1 * needed;
}

CutParams constants_chooser(double eps0, const CRDimension& dim) {
  if (!(eps0 > 0.0 && eps0 < 1.0 / 3.0))
    throw std::invalid_argument("constants_chooser: eps0 must be in (0, 1/3)");
  CutParams p;
  p.eps0 = eps0;
  p.q = dim.q();
  p.eps1 = 0.5 * (1.0 - 3.0 * eps0);
  p.eps2 = 0.25 * (1.0 - 3.0 * eps0);
  p.gamma = p.eps2;
  p.eps = p.gamma;
  p.M = 4.0 * p.gamma;
  p.sigma0 = (2.0 / p.q) * p.eps2;
  p.chain_as_printed = std::abs(p.eps2 - 2.0 * p.eps1) < 1e-15;  // printed chain says ε₂ = 2ε₁
  p.C_cut = estimate_cut_constant(p.gamma, p.eps, p.M, {p.q});
  p.L_degree = static_cast<int>(std::ceil(4.0 * (1.0 + eps0 + p.sigma0 + p.C_cut) / (1.0 - eps0)));
  const double a = 1.0 + (2.0 + 4.0 * std::sqrt(3.0)) * (eps0 + p.eps1);
  p.delta1 = 4.0 * p.eps1 * p.eps2 * p.gamma * p.gamma / (p.q * a * a);
  p.log10_delta2 =
      std::log10(0.5 * p.gamma * p.gamma) - 2.0 * p.L_degree * std::log10(3.0);
  p.delta2 = std::pow(10.0, p.log10_delta2);  // 0 on underflow
  p.delta_tilde = std::min(p.delta1, p.delta2);
  p.delta_tilde_effective = (p.delta2 > 0.0) ? p.delta_tilde : p.delta1;
  p.log10_spectral_gap_margin = p.L_degree * std::log10(3.0) -
                                0.5 * p.q * std::log10(p.gamma) +
                                0.25 * p.q * std::log10(p.delta_tilde_effective);
  return p;
}

TermReport verify_certificate(const SpectralField& r, const CutParams& params) {
  const auto& ctx = r.context();
  const CRDimension& dim = ctx->dim();
  if (dim.n < 2)
    throw std::domain_error("verify_certificate: requires n >= 2 (q must lie in (2,3])");
  if (!r.is_real()) throw std::invalid_argument("verify_certificate: r must be real-valued");

  const double q = dim.q();
  const double theta = dim.theta();
  const double l00 = dim.half_nu() * dim.half_nu();
  const double smeas = dim.sphere_measure();
  const auto& w = ctx->weights();
  const Eigen::VectorXd rv = r.real_node_values();

  if (rv.minCoeff() < -1.0)
    throw std::domain_error("verify_certificate: precondition r >= -1 violated (min node " +
                            std::to_string(rv.minCoeff()) + ")");

  // Orthogonality (3.2): mean and all degree-one projections of r must vanish.
  double ortho_residual = std::abs((w.array() * rv.array()).sum() / smeas);
  for (int j = 0; j < dim.complex_dim(); ++j) {
    for (bool conj_flag : {false, true}) {
      const Eigen::VectorXcd zv = ctx->coordinate_values(j, conj_flag);
      Complex pz = 0.0;
      for (Eigen::Index i = 0; i < w.size(); ++i) pz += w(i) * rv(i) * std::conj(zv(i));
      ortho_residual = std::max(ortho_residual, std::abs(pz) / smeas);
    }
  }
  if (ortho_residual > 1e-10)
    throw std::invalid_argument(
        "verify_certificate: orthogonality condition (3.2) violated (residual " +
        std::to_string(ortho_residual) + ")");

  TermReport rep;
  rep.params = params;
  rep.lq_sq = std::pow(r.lp_norm(q, Measure::Probability), 2.0);
  if (rep.lq_sq > params.delta_tilde_effective)
    throw std::invalid_argument("verify_certificate: smallness condition violated: |r|_q^2 = " +
                                std::to_string(rep.lq_sq) + " > delta_tilde");

  const CutDecomposition d = cut(rv, params.gamma, params.M);

  auto pinner = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (w.array() * a.array() * b.array()).sum() / smeas;
  };
  rep.p11 = pinner(d.r1, d.r1);
  rep.p22 = pinner(d.r2, d.r2);
  rep.p33 = pinner(d.r3, d.r3);
  rep.p12 = pinner(d.r1, d.r2);
  rep.p13 = pinner(d.r1, d.r3);
  rep.p23 = pinner(d.r2, d.r3);
  rep.r3_lq_pow = (w.array() * d.r3.array().pow(q)).sum() / smeas;
  rep.mean_r1 = (w.array() * d.r1.array()).sum() / smeas;
  rep.zeta_proj.resize(dim.complex_dim());
  rep.zetabar_proj.resize(dim.complex_dim());
  for (int j = 0; j < dim.complex_dim(); ++j) {
    const Eigen::VectorXcd zv = ctx->coordinate_values(j, false);
    const Eigen::VectorXcd zbv = ctx->coordinate_values(j, true);
    Complex pz = 0.0, pzb = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      pz += w(i) * d.r1(i) * std::conj(zv(i));
      pzb += w(i) * d.r1(i) * std::conj(zbv(i));
    }
    rep.zeta_proj[j] = pz / smeas;
    rep.zetabar_proj[j] = pzb / smeas;
  }

  // Band-limited projections of the cuts carry the energy terms.
  const SpectralField f1 = SpectralField::project_nodes(ctx, d.r1.cast<Complex>());
  const SpectralField f2 = SpectralField::project_nodes(ctx, d.r2.cast<Complex>());
  const SpectralField f3 = SpectralField::project_nodes(ctx, d.r3.cast<Complex>());
  const double E1 = energy(f1, Measure::Probability);
  const double E2 = energy(f2, Measure::Probability);
  const double E3 = energy(f3, Measure::Probability);

  rep.I1 = (1.0 - theta * params.eps0) * E1 - l00 * (q - 1.0 + params.eps1 * theta) * rep.p11 +
           l00 * params.sigma0 * theta * (rep.p22 + rep.p33);
  rep.I2 = (1.0 - theta * params.eps0) * E2 -
           l00 * (q - 1.0 + (params.sigma0 + params.C_cut) * theta) * rep.p22;
  rep.I3 = (1.0 - theta * params.eps0) * E3 -
           (2.0 / q) * l00 * (1.0 + params.eps2 * theta) * rep.r3_lq_pow -
           l00 * params.sigma0 * theta * rep.p33;

  rep.energy_r = energy(r, Measure::Probability);
  const SpectralField one_plus_r = SpectralField::constant(ctx, 1.0) + r;
  const double lq1 = one_plus_r.lp_norm(q, Measure::Probability);
  rep.deficit = energy(one_plus_r, Measure::Probability) - l00 * lq1 * lq1;

  rep.certificate_holds = rep.I1 >= -1e-9 && rep.I2 >= -1e-9 && rep.I3 >= -1e-9;
  rep.headline_holds = rep.deficit >= theta * params.eps0 * rep.energy_r - 1e-8;
  rep.splitting_slack = rep.deficit - theta * params.eps0 * rep.energy_r - (rep.I1 + rep.I2 + rep.I3);
  return rep;
}

SplitReport pos_neg_split_bound(const SpectralField& u_in) {
  const auto& ctx = u_in.context();
  const CRDimension& dim = ctx->dim();
  if (!u_in.is_real()) throw std::invalid_argument("pos_neg_split_bound: u must be real-valued");
  const double q = dim.q();
  const double Q = dim.Q();
  const double l00 = dim.half_nu() * dim.half_nu();
  const double sharp = l00 * std::pow(dim.sphere_measure(), 2.0 / Q);

  const double nq = u_in.lp_norm(q, Measure::Surface);
  if (!(nq > 0.0)) throw std::invalid_argument("pos_neg_split_bound: zero field");
  const SpectralField u = u_in * (1.0 / nq);

  Eigen::MatrixXcd tv, tbv;
  t_node_values(u, tv, tbv);
  const Eigen::VectorXd uv = u.real_node_values();
  const auto& w = ctx->weights();

  double epos = 0.0, eneg = 0.0, mneg = 0.0, mpos = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    double g = 0.0;
    for (int j = 0; j < dim.complex_dim(); ++j) g += std::norm(tv(i, j));
    const double cell = w(i) * (g + l00 * uv(i) * uv(i));
    const double mass = w(i) * std::pow(std::abs(uv(i)), q);
    if (uv(i) >= 0.0) {
      epos += cell;
      mpos += mass;
    } else {
      eneg += cell;
      mneg += mass;
    }
  }

  SplitReport rep;
  rep.swapped = mneg > mpos;
  if (rep.swapped) {
    std::swap(epos, eneg);
    std::swap(mpos, mneg);
  }
  const double total_mass = mpos + mneg;  // = 1 up to round-off after normalization
  rep.m = mneg / total_mass;
  rep.energy = epos + eneg;
  rep.energy_pos = epos;
  rep.energy_neg = eneg;
  rep.deficit = rep.energy - sharp;
  rep.deficit_pos = epos - sharp * std::pow(1.0 - rep.m, 2.0 / q);
  rep.deficit_neg = eneg - sharp * std::pow(rep.m, 2.0 / q);
  rep.concavity_gap = std::pow(1.0 - rep.m, 2.0 / q) + std::pow(rep.m, 2.0 / q) - 1.0;
  rep.floor_constant = 1.0 - std::pow(2.0, -2.0 / Q);
  rep.identity_residual =
      rep.deficit - rep.deficit_pos - rep.deficit_neg - sharp * rep.concavity_gap;
  const double two_floor = 2.0 - std::pow(2.0, 1.0 - 2.0 / Q);
  rep.part_slack = rep.deficit_neg + sharp * rep.concavity_gap - two_floor * rep.energy_neg;
  rep.chain_slack = rep.deficit - rep.deficit_pos - two_floor * rep.energy_neg;
  rep.chain_holds = rep.concavity_gap >= -1e-14 && rep.part_slack >= -1e-8 &&
                    rep.chain_slack >= -1e-8 && std::abs(rep.identity_residual) <= 1e-10;
  return rep;
}

double spectral_ratio(int j, int k, int n) {
  if (j + k < 2)
    throw std::invalid_argument("spectral_ratio: j+k must be >= 2 (tangent directions excluded)");
  const CRDimension dim(n);
  const double l00 = dim.half_nu() * dim.half_nu();
  return 1.0 - (dim.q() - 1.0) * l00 / sublaplacian_eigenvalue(j, k, n);
}

}  // namespace crstab
