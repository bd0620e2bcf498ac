#include "crstab/yamabe.hpp"

#include <sstream>

namespace crstab {

namespace {

double kappa(const CRDimension& dim) { return 4.0 * (dim.n + 1.0) / dim.n; }

struct RhsWork {
  Eigen::VectorXcd k;
  double min_node = 0.0;
};

// Projected RHS in coefficient space: k = (n/2)(r* c - proj(R u)), with the
// discrete average r* chosen so that d/dt ∫u^q dσ = 0 exactly.
bool rhs(const SphereContext& ctx, const Eigen::VectorXcd& c, RhsWork& out) {
  const int n = ctx.dim().n;
  const double q = ctx.dim().q();
  const double kap = kappa(ctx.dim());

  Eigen::MatrixXcd cc(c.size(), 2);
  cc.col(0) = c;
  cc.col(1) = ctx.lambdas().cast<Complex>().cwiseProduct(c);
  const Eigen::MatrixXcd uv = ctx.values() * cc;  // nodes x {u, Lu}
  const Eigen::VectorXd u = uv.col(0).real();
  out.min_node = u.minCoeff();
  if (!(out.min_node > 0.0)) return false;

  const Eigen::VectorXd lu = uv.col(1).real();
  const Eigen::VectorXd Ru = kap * lu.array() * u.array().pow(-2.0 / n);  // (R u) at nodes
  const Eigen::VectorXd uq1 = u.array().pow(q - 1.0);

  Eigen::MatrixXcd weighted(u.size(), 2);
  weighted.col(0) = (ctx.weights().array() * Ru.array()).matrix().cast<Complex>();
  weighted.col(1) = (ctx.weights().array() * uq1.array()).matrix().cast<Complex>();
  const Eigen::MatrixXcd proj = ctx.values().adjoint() * weighted;  // {proj(Ru), proj(u^{q-1})}

  const double volume = (ctx.weights().array() * u.array() * uq1.array()).sum();
  const double rstar = std::real(proj.col(1).dot(proj.col(0))) / volume;
  out.k = 0.5 * n * (rstar * c - proj.col(0));
  return true;
}

}  // namespace

Eigen::VectorXd webster_scalar(const FlowState& state) {
  const auto& ctx = *state.u.context();
  const Eigen::VectorXd u = state.u.real_node_values();
  if (!(u.minCoeff() > 0.0))
    throw std::domain_error("webster_scalar: flow state has a non-positive node value");
  const Eigen::VectorXcd lam_c = ctx.lambdas().cast<Complex>().cwiseProduct(state.u.coeffs());
  const Eigen::VectorXd lu = (ctx.values() * lam_c).real();
  return kappa(ctx.dim()) * lu.array() / u.array().pow(1.0 + 2.0 / ctx.dim().n);
}

double total_curvature(const SpectralField& u) {
  return kappa(u.context()->dim()) * energy(u, Measure::Surface);
}

double conformal_volume(const SpectralField& u) {
  const Eigen::VectorXd uv = u.real_node_values();
  return (u.context()->weights().array() * uv.array().pow(u.context()->dim().q())).sum();
}

double curvature_variance(const SpectralField& u) {
  const auto& ctx = *u.context();
  const Eigen::VectorXd R = webster_scalar(FlowState{u, 0.0});
  const Eigen::VectorXd uv = u.real_node_values();
  const Eigen::VectorXd dv = ctx.weights().array() * uv.array().pow(ctx.dim().q());
  const double vol = dv.sum();
  const double r = (dv.array() * R.array()).sum() / vol;
  return (dv.array() * (R.array() - r).square()).sum();
}

double default_dt(const CRDimension& dim, int D) {
  // Linearized decay rate of mode (j,k) around u = 1 is
  // (n/2) κ (λ_{j,k} - (1+2/n) λ_{0,0}); the stiffest truncated mode sits near
  // j = k = D/2, not (D,0). Stay inside the RK4 stability interval.
  const double l00 = dim.half_nu() * dim.half_nu();
  const double lmax = sublaplacian_eigenvalue(D / 2, D - D / 2, dim.n);
  const double rate = 0.5 * dim.n * kappa(dim) * (lmax - (1.0 + 2.0 / dim.n) * l00);
  return 2.5 / rate;
}

StepResult flow_step(const FlowState& state, double dt, const FlowOptions& opts, double s0_scale,
                     double v_ref) {
  const auto& ctx = state.u.context();
  const double s_prev = total_curvature(state.u);
  const double tol = opts.energy_tol_rel * std::max(s0_scale, s_prev);
  if (v_ref <= 0.0) v_ref = conformal_volume(state.u);

  int halvings = 0;
  while (true) {
    RhsWork k1, k2, k3, k4;
    const Eigen::VectorXcd& c = state.u.coeffs();
    const bool ok = rhs(*ctx, c, k1) && rhs(*ctx, c + (0.5 * dt) * k1.k, k2) &&
                    rhs(*ctx, c + (0.5 * dt) * k2.k, k3) && rhs(*ctx, c + dt * k3.k, k4);
    if (ok) {
      Eigen::VectorXcd cn = c + (dt / 6.0) * (k1.k + 2.0 * k2.k + 2.0 * k3.k + k4.k);
      // The flow lives on real fields; round-off excites the conjugate-
      // antisymmetric coefficient subspace, which contains growing modes
      // (rate (n/2) r on constants). Re-projecting the real part is exact for
      // band-limited fields and removes that component entirely.
      const Eigen::VectorXcd re_nodes =
          (ctx->values() * cn).real().cast<Complex>().cwiseProduct(ctx->weights().cast<Complex>());
      cn = ctx->values().adjoint() * re_nodes;
      SpectralField un(ctx, std::move(cn));
      if (un.min_node_value() > 0.0) {
        // Volume is a first integral of the continuous flow; project the RK4
        // result back onto the V = v_ref level set before the safeguard test.
        un = un * std::pow(v_ref / conformal_volume(un), 1.0 / ctx->dim().q());
        const double s_new = total_curvature(un);
        if (s_new <= s_prev + tol)
          return StepResult{FlowState{std::move(un), state.time + dt}, dt, halvings};
      }
    }
    if (++halvings > opts.max_halvings)
      throw std::runtime_error("flow_step: dt underflow after " + std::to_string(opts.max_halvings) +
                               " halvings at t=" + std::to_string(state.time) + " (dt=" +
                               std::to_string(dt) + ", min node=" +
                               std::to_string(state.u.min_node_value()) + ")");
    dt *= 0.5;
  }
}

namespace {

FlowState advance_to(FlowState st, double target, double dt_cap, const FlowOptions& opts,
                     double s0, double v0) {
  while (st.time < target - 1e-13 * std::max(1.0, target)) {
    const double dt = std::min(dt_cap, target - st.time);
    st = flow_step(st, dt, opts, s0, v0).state;
  }
  return st;
}

FlowSample make_sample(const FlowState& st, const FlowOptions& opts, DistanceOptions& dist_opts,
                       std::optional<CVector>& warm_eta, double s0, double v0) {
  FlowSample s;
  s.t = st.time;
  s.S = total_curvature(st.u);
  s.V = conformal_volume(st.u);
  s.r_avg = s.S / s.V;
  s.curv_var = curvature_variance(st.u);
  if (opts.track_distance) {
    if (warm_eta) dist_opts.warm_start_eta = *warm_eta;
    const DistanceResult d = distance_to_sobolev_manifold(st.u, dist_opts);
    s.dist_ratio = d.squared_distance / energy(st.u, Measure::Surface);
    warm_eta = d.argmin.eta;
  }
  if (opts.probe_dissipation) {
    // Centered probe at t+h: dS/dt vs -n ∫(R-r)² dV on the probe state.
    const double h = opts.probe_h;
    const FlowState mid = advance_to(st, st.time + h, h, opts, s0, v0);
    const FlowState fwd = advance_to(mid, st.time + 2.0 * h, h, opts, s0, v0);
    s.dsdt_fd = (total_curvature(fwd.u) - s.S) / (2.0 * h);
    s.dsdt_identity = -st.u.context()->dim().n * curvature_variance(mid.u);
  }
  return s;
}

double dist_ratio_of(const FlowState& st, DistanceOptions dopts, const std::optional<CVector>& warm) {
  if (warm) dopts.warm_start_eta = *warm;
  const DistanceResult d = distance_to_sobolev_manifold(st.u, dopts);
  return d.squared_distance / energy(st.u, Measure::Surface);
}

}  // namespace

FlowTrace run_flow(const SpectralField& u0, const FlowStop& stop, const FlowOptions& opts) {
  return run_flow(FlowState{u0, 0.0}, stop, opts);
}

FlowTrace run_flow(const FlowState& start, const FlowStop& stop, const FlowOptions& opts) {
  const SpectralField& u0 = start.u;
  if (!u0.is_real()) throw std::invalid_argument("run_flow: initial data must be real");
  if (!(u0.min_node_value() > 0.0))
    throw std::domain_error("run_flow: initial data must be positive at the grid nodes");
  if (!stop.tmax && !stop.ratio) throw std::invalid_argument("run_flow: no stop condition");
  if (stop.ratio && !opts.track_distance)
    throw std::invalid_argument("run_flow: ratio stop requires track_distance");
  if (stop.tmax && *stop.tmax <= start.time)
    throw std::invalid_argument("run_flow: tmax must exceed the start time");

  const auto& ctx = u0.context();
  const double dt_cap = (opts.dt > 0.0) ? opts.dt : default_dt(ctx->dim(), ctx->basis().max_degree);
  const double s0 = total_curvature(u0);
  const double v0 = conformal_volume(u0);

  FlowTrace trace;
  FlowState st = start;
  DistanceOptions dist_opts = opts.dist_opts;
  std::optional<CVector> warm_eta;

  trace.samples.push_back(make_sample(st, opts, dist_opts, warm_eta, s0, v0));
  double last_ratio = trace.samples.back().dist_ratio;
  FlowState prev_sample_state = st;

  if (stop.ratio && last_ratio <= *stop.ratio) {
    trace.ratio_reached = true;
    trace.t_cross = st.time;
    trace.t_cross_bracket = 0.0;
    trace.cross_state = st;
    trace.final_state = st;
    return trace;
  }

  double dt = dt_cap;
  double next_sample = st.time + opts.sample_interval;
  long steps = 0;
  int streak = 0;
  while (steps < opts.max_steps) {
    double target = next_sample;
    if (stop.tmax) target = std::min(target, *stop.tmax);
    const double step_dt = std::min(dt, target - st.time);
    StepResult sr = flow_step(st, step_dt, opts, s0, v0);
    st = std::move(sr.state);
    ++steps;
    trace.accepted_steps++;
    trace.rejected_steps += sr.halvings;
    if (sr.halvings > 0) {
      dt = sr.dt_used;
      streak = 0;
    } else if (++streak >= 8) {
      dt = std::min(dt * 1.25, dt_cap);
      streak = 0;
    }

    const bool at_sample = st.time >= next_sample - 1e-12;
    const bool at_end = stop.tmax && st.time >= *stop.tmax - 1e-12;
    if (at_sample || at_end) {
      trace.samples.push_back(make_sample(st, opts, dist_opts, warm_eta, s0, v0));
      const double ratio = trace.samples.back().dist_ratio;
      if (stop.ratio && ratio <= *stop.ratio) {
        // Bisect in time between the bracketing sample states; keep the left
        // (ratio > delta) endpoint as the crossing state.
        FlowState lo = prev_sample_state;
        double hi_t = st.time;
        while (hi_t - lo.time > 1e-4 * std::max(1.0, hi_t)) {
          const double mid = 0.5 * (lo.time + hi_t);
          FlowState midst = advance_to(lo, mid, dt_cap, opts, s0, v0);
          if (dist_ratio_of(midst, dist_opts, warm_eta) > *stop.ratio)
            lo = std::move(midst);
          else
            hi_t = mid;
        }
        trace.ratio_reached = true;
        trace.t_cross = lo.time;
        trace.t_cross_bracket = hi_t - lo.time;
        trace.cross_state = lo;
        trace.final_state = st;
        return trace;
      }
      last_ratio = ratio;
      prev_sample_state = st;
      if (at_sample) next_sample += opts.sample_interval;
    }
    if (at_end) break;
  }
  if (stop.ratio && !trace.ratio_reached)
    throw std::runtime_error("run_flow: ratio " + std::to_string(*stop.ratio) +
                             " not reached within budget (final ratio " +
                             std::to_string(last_ratio) + ")");
  trace.final_state = st;
  return trace;
}

ChainReport local_to_global_chain(const SpectralField& u0, double delta, const FlowOptions& opts,
                                  const DistanceOptions& endpoint_dist) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("local_to_global_chain: delta must be in (0,1)");
  ChainReport rep;
  rep.delta = delta;

  const DeficitReport d0 = sobolev_deficit(u0, Measure::Surface);
  const DistanceResult dist0 = distance_to_sobolev_manifold(u0, endpoint_dist);
  rep.energy_u0 = d0.energy;
  rep.deficit_u0 = d0.deficit;
  rep.dist2_u0 = dist0.squared_distance;
  rep.ratio_u0 = dist0.squared_distance / d0.energy;
  if (rep.ratio_u0 <= delta)
    throw std::invalid_argument("local_to_global_chain: initial ratio " +
                                std::to_string(rep.ratio_u0) + " is already <= delta");

  FlowOptions fopts = opts;
  fopts.track_distance = true;
  // Locate the crossing with the same optimizer depth used for the endpoint
  // quotients, so the located ratio stays on the >= delta side under the
  // final re-evaluation.
  fopts.dist_opts = endpoint_dist;
  FlowTrace trace = run_flow(u0, FlowStop{std::nullopt, delta}, fopts);
  const FlowState& cross = *trace.cross_state;
  rep.t_cross = trace.t_cross;
  rep.t_cross_bracket = trace.t_cross_bracket;

  const DeficitReport d1 = sobolev_deficit(cross.u, Measure::Surface);
  const DistanceResult dist1 = distance_to_sobolev_manifold(cross.u, endpoint_dist);
  rep.energy_t0 = d1.energy;
  rep.deficit_t0 = d1.deficit;
  rep.dist2_t0 = dist1.squared_distance;
  rep.ratio_t0 = dist1.squared_distance / d1.energy;

  rep.q1 = rep.deficit_u0 / rep.dist2_u0;
  rep.q2 = rep.deficit_u0 / rep.energy_u0;
  rep.q3 = rep.deficit_t0 / rep.energy_t0;
  rep.q4 = delta * rep.deficit_t0 / rep.dist2_t0;
  rep.min_slack = std::min({rep.q1 - rep.q2, rep.q2 - rep.q3, rep.q3 - rep.q4, rep.q4});
  rep.inequalities_hold = rep.min_slack >= -1e-8;
  return rep;
}

std::string trace_to_csv(const FlowTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,S,V,r,var,dist_ratio\n";
  for (const auto& s : trace.samples)
    os << s.t << ',' << s.S << ',' << s.V << ',' << s.r_avg << ',' << s.curv_var << ','
       << s.dist_ratio << '\n';
  return os.str();
}

}  // namespace crstab
