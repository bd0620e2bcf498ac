#include "crstab/serialize.hpp"

namespace crstab {

namespace {
Json complex_vec(const CVector& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back({c.real(), c.imag()});
  return a;
}
}  // namespace

Json to_json(const DeficitReport& r) {
  return Json{{"energy", r.energy},
              {"rhs_term", r.rhs_term},
              {"deficit", r.deficit},
              {"lq_norm", r.lq_norm},
              {"measure", r.measure_convention == Measure::Surface ? "surface" : "probability"},
              {"n", r.n},
              {"basis_degree", r.basis_degree},
              {"grid_exactness", r.grid_exactness}};
}

Json to_json(const SharpConstants& c) {
  return Json{{"n", c.n},
              {"heisenberg_sobolev", c.heisenberg_sobolev},
              {"sphere_sobolev_factor", c.sphere_sobolev_factor},
              {"hls_SQ", c.hls_SQ},
              {"hls_heisenberg", c.hls_heisenberg},
              {"transfer_identity_residual", c.transfer_identity_residual()}};
}

Json to_json(const ExtremalParams& p) {
  return Json{{"c", p.c}, {"eta", complex_vec(p.eta)}, {"eta_norm", p.eta_norm()}};
}

Json to_json(const DistanceResult& r) {
  return Json{{"squared_distance", r.squared_distance},
              {"argmin", to_json(r.argmin)},
              {"converged", r.converged},
              {"restarts_used", r.restarts_used},
              {"total_evaluations", r.total_evaluations},
              {"seed", r.seed},
              {"u_scale", r.u_scale}};
}

Json to_json(const CutParams& p) {
  return Json{{"eps0", p.eps0},
              {"eps1", p.eps1},
              {"eps2", p.eps2},
              {"gamma", p.gamma},
              {"eps", p.eps},
              {"M", p.M},
              {"sigma0", p.sigma0},
              {"C_cut", p.C_cut},
              {"L_degree", p.L_degree},
              {"delta1", p.delta1},
              {"delta2", p.delta2},
              {"log10_delta2", p.log10_delta2},
              {"delta_tilde", p.delta_tilde},
              {"delta_tilde_effective", p.delta_tilde_effective},
              {"q", p.q},
              {"log10_spectral_gap_margin", p.log10_spectral_gap_margin},
              {"chain_as_printed", p.chain_as_printed}};
}

Json to_json(const TermReport& r) {
  return Json{{"I1", r.I1},
              {"I2", r.I2},
              {"I3", r.I3},
              {"mean_r1", r.mean_r1},
              {"zeta_projections", complex_vec(r.zeta_proj)},
              {"zetabar_projections", complex_vec(r.zetabar_proj)},
              {"inner_products",
               {{"r1r1", r.p11}, {"r2r2", r.p22}, {"r3r3", r.p33}, {"r1r2", r.p12}, {"r1r3", r.p13}, {"r2r3", r.p23}}},
              {"r3_lq_pow", r.r3_lq_pow},
              {"energy_r", r.energy_r},
              {"deficit", r.deficit},
              {"lq_sq", r.lq_sq},
              {"certificate_holds", r.certificate_holds},
              {"headline_holds", r.headline_holds},
              {"splitting_slack", r.splitting_slack},
              {"params", to_json(r.params)}};
}

Json to_json(const SplitReport& r) {
  return Json{{"m", r.m},
              {"swapped", r.swapped},
              {"energy", r.energy},
              {"energy_pos", r.energy_pos},
              {"energy_neg", r.energy_neg},
              {"deficit", r.deficit},
              {"deficit_pos", r.deficit_pos},
              {"deficit_neg", r.deficit_neg},
              {"concavity_gap", r.concavity_gap},
              {"floor_constant", r.floor_constant},
              {"identity_residual", r.identity_residual},
              {"part_slack", r.part_slack},
              {"chain_slack", r.chain_slack},
              {"chain_holds", r.chain_holds}};
}

Json to_json(const ChainReport& r) {
  return Json{{"delta", r.delta},
              {"t_cross", r.t_cross},
              {"t_cross_bracket", r.t_cross_bracket},
              {"u0", {{"energy", r.energy_u0}, {"deficit", r.deficit_u0}, {"dist2", r.dist2_u0}, {"ratio", r.ratio_u0}}},
              {"t0", {{"energy", r.energy_t0}, {"deficit", r.deficit_t0}, {"dist2", r.dist2_t0}, {"ratio", r.ratio_t0}}},
              {"chain", {{"q1", r.q1}, {"q2", r.q2}, {"q3", r.q3}, {"q4", r.q4}}},
              {"min_slack", r.min_slack},
              {"inequalities_hold", r.inequalities_hold}};
}

Json to_json(const FlowSample& s) {
  return Json{{"t", s.t},       {"S", s.S},
              {"V", s.V},       {"r", s.r_avg},
              {"var", s.curv_var}, {"dist_ratio", s.dist_ratio},
              {"dsdt_fd", s.dsdt_fd}, {"dsdt_identity", s.dsdt_identity}};
}

Json to_json(const FlowTrace& t) {
  Json samples = Json::array();
  for (const auto& s : t.samples) samples.push_back(to_json(s));
  Json j{{"samples", samples},
         {"accepted_steps", t.accepted_steps},
         {"rejected_steps", t.rejected_steps},
         {"ratio_reached", t.ratio_reached}};
  if (t.ratio_reached) {
    j["t_cross"] = t.t_cross;
    j["t_cross_bracket"] = t.t_cross_bracket;
  }
  return j;
}

Json to_json(const HlsStabilityReport& r) {
  return Json{{"deficit", to_json(r.deficit)},
              {"distance", to_json(r.distance)},
              {"ratio", r.ratio},
              {"indeterminate", r.indeterminate},
              {"beta", r.beta},
              {"dual_constant", r.dual_constant},
              {"conditional_holds", r.conditional_holds}};
}

Json flow_state_to_json(const FlowState& st) {
  const auto& ctx = *st.u.context();
  Json coeffs = Json::array();
  for (Eigen::Index i = 0; i < st.u.coeffs().size(); ++i)
    coeffs.push_back({st.u.coeffs()(i).real(), st.u.coeffs()(i).imag()});
  return Json{{"time", st.time},
              {"n", ctx.dim().n},
              {"basis_degree", ctx.basis().max_degree},
              {"grid_exactness", ctx.grid().exactness},
              {"coeffs", coeffs}};
}

FlowState flow_state_from_json(const Json& j, const ContextPtr& ctx) {
  if (j.at("n").get<int>() != ctx->dim().n ||
      j.at("basis_degree").get<int>() != ctx->basis().max_degree)
    throw std::invalid_argument("flow_state_from_json: checkpoint does not match the context");
  const auto& coeffs = j.at("coeffs");
  Eigen::VectorXcd c(static_cast<Eigen::Index>(coeffs.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) = Complex(coeffs[i][0].get<double>(), coeffs[i][1].get<double>());
  return FlowState{SpectralField(ctx, std::move(c)), j.at("time").get<double>()};
}

}  // namespace crstab
