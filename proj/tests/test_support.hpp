#pragma once

#include <random>

#include <crstab/field.hpp>

namespace crstab::testing {

/// Shared contexts, built once per process (basis construction is pure).
ContextPtr ctx_n1(int D = 6, int exactness = -1);
ContextPtr ctx_n1_d8();
ContextPtr ctx_n2(int D = 4, int exactness = -1);

/// Deterministic uniform double in [-1, 1).
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  double uniform() { return 2.0 * ((gen_() >> 11) * 0x1.0p-53) - 1.0; }
  double positive() { return (gen_() >> 11) * 0x1.0p-53; }
  Complex complex_unit_ball() {
    return Complex(uniform(), uniform()) / std::sqrt(2.0);
  }

 private:
  std::mt19937_64 gen_;
};

/// Random real band-limited field (conjugate-symmetric coefficients).
SpectralField random_real_field(const ContextPtr& ctx, Rng& rng, int min_degree = 0);

/// Random η with |η| <= rho_max, uniformly-ish distributed directions.
CVector random_eta(int n, Rng& rng, double rho_max);

// ---------------------------------------------------------------------------
// Independent oracle for the bilinear kernel energy on S³ (n = 1):
//   ∬ g(ζ) g(η) |1-ζ·η̄|^{-(Q-2)/2} dσ(ζ) dσ(η).
// The inner integral is computed in rotated Hopf coordinates with tanh-sinh
// rules packed toward the kernel singularity; the outer integral uses a
// product grid. Slow but implementation-independent of the spectral route.
// ---------------------------------------------------------------------------

/// (K g)(ζ) = ∫ g(η) |1-ζ·η̄|^{-2α} dσ(η) by the desingularized nested rule.
double kernel_apply_oracle(const SpectralField& g, const SpherePoint& zeta, double alpha,
                           int ns = 48, int npsi = 48, int nchi = 16);

/// Full double integral: outer product-grid of the given exactness.
double hls_energy_oracle(const SpectralField& g, int outer_exactness = 12, int ns = 48,
                         int npsi = 48, int nchi = 16);

}  // namespace crstab::testing
