#pragma once

#include "crstab/functionals.hpp"

namespace crstab {

/**
 * @brief The constant ledger of the local-stability certificate.
 *
 * All quantities derive from ε₀ ∈ (0, 1/3) through
 *   ε₁ = (1-3ε₀)/2,  ε₂ = (1-3ε₀)/4,  γ = ε = ε₂,  σ₀ = (2/q) ε₂,
 *   C = C_{γ,ε,M} (estimated numerically),  L = ⌈4(1+ε₀+σ₀+C)/(1-ε₀)⌉,
 *   δ₁ = 4ε₁ε₂γ² / (q (1+(2+4√3)(ε₀+ε₁))²),  δ₂ = γ²/(2·3^{2L}),
 *   δ̃ = min(δ₁, δ₂).
 *
 * Note γ = ε₂ = ε₁/2 here; the chain "γ = ε₂ = 2ε₁" printed alongside the
 * definitions is inconsistent with them, which `chain_as_printed` records.
 */
struct CutParams {
  double eps0 = 0.0;
  double eps1 = 0.0, eps2 = 0.0;
  double gamma = 0.0, eps = 0.0, M = 0.0;
  double sigma0 = 0.0;
  double C_cut = 0.0;
  int L_degree = 0;
  double delta1 = 0.0, delta2 = 0.0, delta_tilde = 0.0;
  /// log10 of the printed δ₂, kept because δ₂ itself underflows the double
  /// range whenever C (and hence L) comes out large.
  double log10_delta2 = 0.0;
  /// Smallness threshold actually enforced on ‖r‖_q²: min(δ₁, δ₂) when δ₂ is
  /// representable, else δ₁ (δ₂ only feeds the worst-case I₂ argument, whose
  /// conclusion the checker evaluates directly).
  double delta_tilde_effective = 0.0;
  double q = 0.0;
  /// log10 of 3^L γ^{-q/2} δ̃^{q/4}; the spectral-gap step needs this <= log10(1/2).
  double log10_spectral_gap_margin = 0.0;
  bool chain_as_printed = false;
};

struct CutDecomposition {
  Eigen::VectorXd r1, r2, r3;  // r1 = min(r,γ), r2 = min((r-γ)+, M-γ), r3 = (r-M)+
};

/// Three-piece height cut; requires r >= -1 nodewise and 0 < γ < M.
CutDecomposition cut(const Eigen::VectorXd& r, double gamma, double M);

/// Evaluates (1+r)^q - 1 - qr <= (q(q-1)/2 + 2γθ)r₁² + (q(q-1)/2 + Cθ)r₂²
///            + 2r₁r₂ + 2(r₁+r₂)r₃ + (1+εθ)r₃^q  with θ = q-2.
bool pointwise_cut_bound(double r, double q, double gamma, double eps, double M, double C);

/**
 * @brief Smallest C (plus a 10% margin) for which the cut bound holds over
 * r ∈ [-1, 10M] on a dense grid, for every q in q_grid.
 */
double estimate_cut_constant(double gamma, double eps, double M, const std::vector<double>& q_grid,
                             long grid_points = 100000, double cap = 1e8);

/// Populate the full ledger from ε₀ (the q of `dim` fixes the exponents).
CutParams constants_chooser(double eps0, const CRDimension& dim);

/**
 * @brief Certificate evaluation: the three deficit contributions and the
 * headline bound deficit(1+r) >= θ ε₀ E[r], all in the uniform probability
 * measure.
 */
struct TermReport {
  double I1 = 0.0, I2 = 0.0, I3 = 0.0;
  double mean_r1 = 0.0;
  CVector zeta_proj, zetabar_proj;  // (r₁, ζ_j) and (r₁, ζ̄_j)
  double p11 = 0.0, p22 = 0.0, p33 = 0.0, p12 = 0.0, p13 = 0.0, p23 = 0.0;
  double r3_lq_pow = 0.0;  // ∫ |r₃|^q
  double energy_r = 0.0;   // E[r]
  double deficit = 0.0;    // deficit(1+r)
  double lq_sq = 0.0;      // ‖r‖_q²
  bool certificate_holds = false;  // I₁, I₂, I₃ >= -1e-9
  bool headline_holds = false;     // deficit >= θ ε₀ E[r] - 1e-8
  double splitting_slack = 0.0;    // deficit - θε₀E[r] - (I₁+I₂+I₃)
  CutParams params;
};

TermReport verify_certificate(const SpectralField& r, const CutParams& params);

/**
 * @brief Positive/negative-part reduction: after normalizing ‖u‖_q = 1
 * (surface) and arranging m = ‖u₋‖_q^q <= 1/2, verifies the assembled
 * chain deficit(u) >= deficit(u₊) + (2-2^{1-2/Q}) E[u₋] together with the
 * concavity gap (1-m)^{2/q} + m^{2/q} - 1 >= 0.
 *
 * The split energies are indicator-weighted quadratures of the symbolic
 * CR gradient, so E[u₊] + E[u₋] = E[u] holds exactly nodewise.
 */
struct SplitReport {
  double m = 0.0;
  bool swapped = false;
  double energy = 0.0, energy_pos = 0.0, energy_neg = 0.0;
  double deficit = 0.0, deficit_pos = 0.0, deficit_neg = 0.0;
  double concavity_gap = 0.0;
  double floor_constant = 0.0;      // 1 - 2^{-2/Q}
  double identity_residual = 0.0;   // deficit - deficit₊ - deficit₋ - λ₀₀|S|^{2/Q}·gap
  double chain_slack = 0.0;         // deficit - deficit₊ - (2-2^{1-2/Q}) E[u₋]
  double part_slack = 0.0;          // deficit₋ + λ₀₀|S|^{2/Q}·gap - (2-2^{1-2/Q}) E[u₋]
  bool chain_holds = false;
};

SplitReport pos_neg_split_bound(const SpectralField& u);

/// Second-order deficit-to-distance ratio 1 - (q-1) λ₀₀/λ_{j,k}; equals
/// 4/(Q+6) at (2,0) and 4/(Q+2) at (1,1). Requires j+k >= 2.
double spectral_ratio(int j, int k, int n);

}  // namespace crstab
