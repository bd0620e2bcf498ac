#pragma once

#include "crstab/field.hpp"

namespace crstab {

/**
 * @brief Sharp constants of the Sobolev/HLS family.
 *
 *  heisenberg_sobolev   : 4π n² / (2^{2n} n!)^{1/(n+1)}         (H^n gradient form)
 *  sphere_sobolev_factor: ((Q-2)/4)² |S^{2n+1}|^{2/Q}           (Eq. form on the sphere)
 *  hls_SQ               : |S^{2n+1}|^{(Q-2)/Q} n! / Γ²((Q+2)/4) (sphere HLS at λ = Q-2)
 *  hls_heisenberg       : the H^n HLS constant at λ = Q-2; equals hls_SQ · 2^{-n(Q-2)/Q}
 */
struct SharpConstants {
  int n = 1;
  double heisenberg_sobolev = 0.0;
  double sphere_sobolev_factor = 0.0;
  double hls_SQ = 0.0;
  double hls_heisenberg = 0.0;

  /// |hls_SQ · 2^{-n(Q-2)/Q} - hls_heisenberg| (Cayley transfer bookkeeping).
  double transfer_identity_residual() const;
};

SharpConstants sharp_constants(int n);

/// Residual of |S|^{-2/Q}((Q-2)/4)^{-2} (Γ²((Q-2)/4)/(2π^{n+1}))^{-1} = |S|^{(Q-2)/Q} n!/Γ²((Q+2)/4).
double sharp_constant_duality_residual(int n);

struct DeficitReport {
  double energy = 0.0;
  double rhs_term = 0.0;
  double deficit = 0.0;  // energy - rhs_term, exactly as stored
  Measure measure_convention = Measure::Surface;
  double lq_norm = 0.0;
  // provenance
  int n = 1;
  int basis_degree = 0;
  int grid_exactness = 0;
};

/// Spectral Dirichlet energy Σ λ_{j,k} ‖π_{j,k} u‖² in the requested measure.
double energy(const SpectralField& u, Measure m = Measure::Surface);
/// E with the λ_{0,0} zero-mode removed: E₀[u] = E[u] - λ00 (u,u).
double energy_zero(const SpectralField& u, Measure m = Measure::Surface);
/// Polarized energy, real part of Σ λ c_u conj(c_v).
double energy_inner(const SpectralField& u, const SpectralField& v, Measure m = Measure::Surface);

/// Node values of T_j u and T̄_j u (columns j = 0..n) from the symbolic derivative.
void t_node_values(const SpectralField& u, Eigen::MatrixXcd& t_vals, Eigen::MatrixXcd& tbar_vals);

/// Quadrature route for E[u]: ½∫(Σ|T_j u|²+|T̄_j u|²) + (n²/4)∫|u|².
double energy_quadrature(const SpectralField& u, Measure m = Measure::Surface);

/// Sobolev deficit E[u] - ((Q-2)/4)² |S|^{2/Q} ‖u‖_q² (per-measure variant).
DeficitReport sobolev_deficit(const SpectralField& u, Measure m = Measure::Surface);

/**
 * @brief Deficit of F = |J_C|^{(Q-2)/(2Q)} u∘C on H^n, computed entirely on
 * the sphere through ∫|∇_{H} F|² = 2^{2+1/(n+1)} E[u] and the norm transfer.
 */
DeficitReport heisenberg_deficit(const SpectralField& u, double weight_exponent);

}  // namespace crstab
