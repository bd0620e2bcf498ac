#pragma once

#include "crstab/extremals.hpp"

namespace crstab {

/**
 * @brief Eigenvalue of the kernel operator |1-ζ·η̄|^{-2α} on H_{j,k}:
 *
 *   E_{j,k} = 2π^{n+1} Γ(n+1-2α) Γ(j+α) Γ(k+α) / (Γ²(α) Γ(j+n+1-α) Γ(k+n+1-α)),
 *
 * valid for -1 < α < (n+1)/2. At α = (Q-2)/4 the operator is proportional to
 * L⁻¹: E_{j,k} Γ²((Q-2)/4) / (2π^{n+1}) = 1/λ_{j,k}.
 */
double kernel_eigenvalue(int j, int k, double alpha, int n);

struct KernelSpectrum {
  double alpha = 0.0;
  int n = 1;
  int max_degree = 0;
  Eigen::MatrixXd table;  // (D+1)x(D+1); entry (j,k) valid for j+k <= D

  std::string to_csv() const;
};

KernelSpectrum kernel_spectrum(double alpha, int n, int D);

/// Bilinear HLS energy ∬ g(ζ)g(η)/|1-ζ·η̄|^{(Q-2)/2} dσdσ, evaluated
/// spectrally as Σ E_{j,k} ‖π_{j,k} g‖² (surface measure).
double hls_energy(const SpectralField& g);

/// Sharp HLS deficit ‖g‖²_{2Q/(Q+2)} - |S|^{(2-Q)/Q} Γ²((Q+2)/4)/n! · hls_energy(g).
DeficitReport hls_deficit(const SpectralField& g);

/// Coefficient-wise division by λ_{j,k}; the kernel form of L⁻¹.
SpectralField inverse_sublaplacian(const SpectralField& v);

/// min{4β(Q+2)/(Q(Q-2)), 1} · (Q+2)/(2(Q-2)), the Legendre-duality transfer of
/// a Sobolev stability constant β into the HLS stability bound.
double legendre_dual_constant(double beta, int Q);

struct HlsStabilityReport {
  DeficitReport deficit;
  DistanceResult distance;
  double ratio = 0.0;  // deficit / d²
  bool indeterminate = false;
  double beta = 0.0;
  double dual_constant = 0.0;
  bool conditional_holds = false;  // ratio >= dual_constant, for the supplied β
};

/// Reports deficit, distance to M*_HLS, and their ratio against the dual
/// constant for a *supplied* β (the true Sobolev stability constant is
/// existence-level and not computed here).
HlsStabilityReport hls_stability_check(const SpectralField& g, double beta,
                                       const DistanceOptions& dist_opts = {});

}  // namespace crstab
