#pragma once

#include <functional>

#include "crstab/types.hpp"

namespace crstab::heis {

/**
 * @brief Point of the Heisenberg group H^n = ℂ^n × ℝ.
 *
 * Group law:  (z,t)·(z',t') = (z+z', t+t'+2 Im z·z̄').
 * Dilations:  δ·(z,t) = (δz, δ²t).
 * Homogeneous norm: |(z,t)| = (|z|⁴ + t²)^{1/4}.
 */
struct HPoint {
  CVector z;
  double t = 0.0;

  int n() const { return static_cast<int>(z.size()); }
  static HPoint identity(int n) { return HPoint{CVector(n, 0.0), 0.0}; }
};

HPoint group_compose(const HPoint& u, const HPoint& v);
HPoint group_inverse(const HPoint& u);
double homogeneous_norm(const HPoint& u);
HPoint dilate(double delta, const HPoint& u);

/**
 * @brief Cayley transform H^n → S^{2n+1} \ {south pole}.
 *
 *   ξ' = 2z / (1+|z|²-it),   ξ_{n+1} = (1-|z|²+it) / (1+|z|²-it).
 *
 * Its Jacobian satisfies
 *   |J_C| = 2^{Q-1}((1+|z|²)²+t²)^{-Q/2} = 2^{-1}|1+ξ_{n+1}|^Q.
 */
SpherePoint cayley(const HPoint& u);

/// Inverse of cayley(); throws std::domain_error at the south pole ξ_{n+1} = -1.
HPoint cayley_inverse(const SpherePoint& xi);

double cayley_jacobian(const HPoint& u);
/// Jacobian in sphere coordinates, 2^{-1}|1+ξ_{n+1}|^Q.
double cayley_jacobian_sphere(const SpherePoint& xi, int n);

using SphereFunction = std::function<double(const SpherePoint&)>;
using HeisenbergFunction = std::function<double(const HPoint&)>;

/**
 * @brief Transfer a sphere function to H^n: F = |J_C|^w · (u ∘ C).
 *
 * Supported weight exponents w are (Q-2)/(2Q) (critical Sobolev pairing) and
 * (Q+2)/(2Q) (HLS pairing); anything else is rejected. The corresponding
 * L^{2Q/(Q-2)} resp. L^{2Q/(Q+2)} norms are preserved by the transfer.
 */
HeisenbergFunction transfer_to_heisenberg(int n, SphereFunction u, double weight_exponent);

/// Pull a Heisenberg function back to the sphere: u = (h ∘ C⁻¹) / |J_C|^w.
SphereFunction pullback_to_sphere(int n, HeisenbergFunction h, double weight_exponent);

}  // namespace crstab::heis
