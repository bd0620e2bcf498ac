#pragma once

#include "crstab/functionals.hpp"
#include "crstab/heisenberg.hpp"

namespace crstab {

/// Parameters (c, η) of the extremal family c |1 - η̄·ξ|^{-exponent}, |η| < 1.
struct ExtremalParams {
  double c = 1.0;
  CVector eta;

  double eta_norm() const { return std::sqrt(abs_sq(eta)); }
};

enum class ExtremalKind { Sobolev, HLS };  // exponent (Q-2)/2 resp. (Q+2)/2

/**
 * @brief Closed-form extremal field with analytic CR derivatives.
 *
 * With w(ξ) = 1 - η̄·ξ and s the exponent,
 *   g(ξ)    = c |w|^{-s},
 *   T_j g   = c (s/2) |w|^{-2(s/2+1)} w̄ (η̄_j - ξ̄_j (1-w)),   T̄_j g = conj(T_j g),
 *   Σ_j (|T_j g|² + |T̄_j g|²) = 2 c² (s/2)² |w|^{-2s-2} (|η|² - |1-w|²).
 */
class ExtremalField {
 public:
  ExtremalField(CRDimension dim, ExtremalParams p, ExtremalKind kind);

  const ExtremalParams& params() const { return params_; }
  double exponent() const { return s_; }
  const CRDimension& dim() const { return dim_; }

  double value(const SpherePoint& xi) const;
  /// Values at all grid nodes plus T_j values (column j).
  void eval_on_grid(const QuadratureGrid& grid, Eigen::VectorXd& values, Eigen::MatrixXcd& t_vals) const;

  /// Surface Dirichlet energy E[g] by zonal quadrature of the closed form.
  double energy_quadrature(int nrad = 64, int nphi = 0) const;
  /// Surface L^p norm by zonal quadrature.
  double lp_norm(double p, int nrad = 64, int nphi = 0) const;
  /// Exact ‖g‖_p^p for exponent·p = Q: c^p |S| (1-|η|²)^{-Q/2}.
  double natural_norm_pow_closed_form() const;

 private:
  CRDimension dim_;
  ExtremalParams params_;
  ExtremalKind kind_;
  double s_;
  int auto_nphi(int nphi) const;
};

/// ∫ |1-η̄·ξ|^{-2α} dσ = |S^{2n+1}| ₂F₁(α, α; n+1; |η|²).
double sphere_kernel_integral(double alpha, int n, double eta_norm_sq);

/// Sobolev deficit of an extremal, all integrals zonal (tight for |η| near 1).
DeficitReport extremal_sobolev_deficit(const CRDimension& dim, const ExtremalParams& p,
                                       int nrad = 96, int nphi = 0);

struct DistanceOptions {
  int restarts = 8;
  long max_evals = 2000;  // per restart
  double xtol = 1e-9;
  double eta_cap = 0.995;
  uint64_t seed = 987654321ULL;
  std::optional<CVector> warm_start_eta;  // restart 0 starts here instead of η = 0
};

struct DistanceResult {
  double squared_distance = 0.0;  // E-norm² (Sobolev) or L^{2Q/(Q+2)} norm² (HLS)
  ExtremalParams argmin;
  bool converged = false;
  int restarts_used = 0;
  long total_evaluations = 0;
  uint64_t seed = 0;
  double u_scale = 0.0;  // E[u] resp. ‖u‖², for relative reporting
};

/**
 * @brief E-distance² to M_* = {c g_{1,η} : c ∈ ℝ}: the multiplier c is
 * eliminated in closed form (c* = <u,g>_E / E[g]) and η is searched by
 * multistart Nelder-Mead in a tanh-squashed chart of the open unit ball.
 */
DistanceResult distance_to_sobolev_manifold(const SpectralField& u, const DistanceOptions& opts = {});
/// Same objective for a closed-form extremal input (exact zero-distance case).
DistanceResult distance_to_sobolev_manifold(const ExtremalField& u, ContextPtr ctx,
                                            const DistanceOptions& opts = {});

/// L^{2Q/(Q+2)} distance to M*_HLS; c found by golden section inside the η search.
DistanceResult distance_to_hls_manifold(const SpectralField& u, const DistanceOptions& opts = {});
DistanceResult distance_to_hls_manifold(const ExtremalField& u, ContextPtr ctx,
                                        const DistanceOptions& opts = {});

/// c·H(δ(a⁻¹u)) with H(u) = ((1+|z|²)²+t²)^{-(Q-2)/4}, or F (HLS) with -(Q+2)/4.
heis::HeisenbergFunction heisenberg_extremal(ExtremalKind kind, double c, double delta,
                                             const heis::HPoint& a);

/// Sphere-side parameters of the pullback of c·H(δ(a⁻¹·)) (resp. F): the
/// Cayley image of the Heisenberg extremal family inside M_* (resp. M*_HLS).
ExtremalParams sphere_params_from_heisenberg(ExtremalKind kind, double c, double delta,
                                             const heis::HPoint& a);

}  // namespace crstab
