#pragma once

#include <Eigen/Dense>
#include <functional>

#include "crstab/types.hpp"

namespace crstab {

/**
 * @brief Positive-weight quadrature on S^{2n+1}, exact for all monomials
 * ζ^α ζ̄^β with |α|+|β| <= exactness.
 *
 * Built as a product rule in Hopf-type coordinates: uniform grids in the
 * n+1 phases (which annihilate every nonzero phase mode up to the target
 * degree exactly) times Gauss-Legendre rules in the latitude variables.
 */
struct QuadratureGrid {
  int n = 1;
  int exactness = 0;
  Eigen::MatrixXcd nodes;   // (#nodes) x (n+1)
  Eigen::VectorXd weights;  // surface-measure weights, all positive

  Eigen::Index size() const { return weights.size(); }
  SpherePoint point(Eigen::Index i) const;
  double total_mass() const { return weights.sum(); }
};

/// Build a grid for S^{2n+1}; n ∈ {1, 2} supported, degree >= 0.
QuadratureGrid sphere_quadrature(int n, int degree);

/// Default exactness used for band limit D: covers u^q for polynomial u >= 0.
int default_exactness(int n, int D);

/// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w);

/**
 * @brief Rule for zonal integrands: ∫_{S^{2n+1}} F(ζ_1) dσ for F depending on
 * the first complex coordinate only. Radial density |S^{2n-1}|/2 · s^{n-1}
 * in s = 1 - |ζ_1|², uniform in the phase.
 */
struct ZonalRule {
  int n = 1;
  std::vector<double> s_nodes, s_weights;  // radial part, density folded in
  int nphi = 0;

  double integrate(const std::function<double(Complex)>& F) const;
};

ZonalRule zonal_rule(int n, int nrad, int nphi);

}  // namespace crstab
