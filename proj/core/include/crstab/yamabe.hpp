#pragma once

#include <optional>

#include "crstab/extremals.hpp"

namespace crstab {

/**
 * @brief Normalized CR Yamabe flow ∂u/∂t = (n/2)(r_θ - R_θ) u on S^{2n+1},
 * discretized as a spectral Galerkin system over the bispherical basis.
 *
 * Curvature: R_θ = κ_n (L u)/u^{1+2/n} with κ_n = 4(n+1)/n, the normalization
 * under which the round sphere (u ≡ 1) has R = n(n+1). The total-curvature
 * functional S_θ = κ_n E[u] decreases; the conformal volume V = ∫u^q dσ is
 * conserved (the discrete average r is chosen to keep V stationary exactly,
 * so the only drift is the time integrator's).
 */
struct FlowState {
  SpectralField u;
  double time = 0.0;
};

struct FlowSample {
  double t = 0.0;
  double S = 0.0;         // total Webster curvature functional
  double V = 0.0;         // conformal volume
  double r_avg = 0.0;     // average curvature
  double curv_var = 0.0;  // ∫ (R - r)² dV
  double dist_ratio = std::numeric_limits<double>::quiet_NaN();  // inf E[u-h]/E[u]
  // dissipation identity probe: centered dS/dt against -n ∫(R-r)² dV
  double dsdt_fd = std::numeric_limits<double>::quiet_NaN();
  double dsdt_identity = std::numeric_limits<double>::quiet_NaN();
};

struct FlowOptions {
  double dt = 0.0;              // 0 = stability cap from the truncated spectrum
  double sample_interval = 0.5;
  int max_halvings = 20;
  long max_steps = 1000000;
  double energy_tol_rel = 1e-10;  // accepted S increase per step, relative to S(0)
  bool track_distance = true;
  bool probe_dissipation = true;  // fill dsdt_fd / dsdt_identity at samples
  double probe_h = 0.002;
  DistanceOptions dist_opts{.restarts = 2, .max_evals = 800};
};

struct FlowStop {
  std::optional<double> tmax;
  std::optional<double> ratio;  // stop when inf E[u-h]/E[u] first reaches this
};

struct FlowTrace {
  std::vector<FlowSample> samples;
  FlowState final_state;
  long accepted_steps = 0;
  long rejected_steps = 0;
  bool ratio_reached = false;
  double t_cross = std::numeric_limits<double>::quiet_NaN();
  double t_cross_bracket = std::numeric_limits<double>::quiet_NaN();  // bisection bracket width
  std::optional<FlowState> cross_state;  // on the ratio >= delta side of the crossing
};

/// Webster scalar curvature at the grid nodes; throws if u has a node <= 0.
Eigen::VectorXd webster_scalar(const FlowState& state);

/// Total curvature S_θ = κ_n E[u] (surface measure).
double total_curvature(const SpectralField& u);
/// Conformal volume ∫ u^q dσ (exact quadrature for positive band-limited u).
double conformal_volume(const SpectralField& u);
/// ∫ (R - r)² dV_θ by node quadrature.
double curvature_variance(const SpectralField& u);

struct StepResult {
  FlowState state;
  double dt_used = 0.0;
  int halvings = 0;
};

/// One RK4 step of the projected dynamics followed by a volume-projection
/// rescale to v_ref (pass <= 0 to hold the state's own volume), with the
/// positivity/monotonicity safeguard; halves dt up to max_halvings, then throws.
StepResult flow_step(const FlowState& state, double dt, const FlowOptions& opts, double s0_scale,
                     double v_ref = -1.0);

/// Stability-capped default step for the truncation degree D.
double default_dt(const CRDimension& dim, int D);

FlowTrace run_flow(const SpectralField& u0, const FlowStop& stop, const FlowOptions& opts = {});
/// Resume from a checkpointed state; stop.tmax is absolute time.
FlowTrace run_flow(const FlowState& start, const FlowStop& stop, const FlowOptions& opts = {});

/**
 * @brief Local-to-global reduction along the flow: runs to the first time the
 * relative distance ratio drops to δ (bisected in time) and reports the
 * monotone quotient chain evaluated at both ends.
 */
struct ChainReport {
  double delta = 0.0;
  double t_cross = 0.0;
  double t_cross_bracket = 0.0;
  double energy_u0 = 0.0, deficit_u0 = 0.0, dist2_u0 = 0.0, ratio_u0 = 0.0;
  double energy_t0 = 0.0, deficit_t0 = 0.0, dist2_t0 = 0.0, ratio_t0 = 0.0;
  // chain quantities: q1 = deficit/dist² and q2 = deficit/E at u0,
  // q3 = deficit/E at t0, q4 = δ·deficit/dist² at t0
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;
  bool inequalities_hold = false;
  double min_slack = 0.0;
};

ChainReport local_to_global_chain(const SpectralField& u0, double delta, const FlowOptions& opts = {},
                                  const DistanceOptions& endpoint_dist = {});

/// CSV with columns t,S,V,r,var,dist_ratio.
std::string trace_to_csv(const FlowTrace& trace);

}  // namespace crstab
