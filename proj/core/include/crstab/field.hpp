#pragma once

#include <memory>

#include "crstab/harmonics.hpp"
#include "crstab/quadrature.hpp"

namespace crstab {

enum class Measure { Surface, Probability };

/**
 * @brief Immutable workspace tying a basis to a quadrature grid.
 *
 * Caches the (nodes x elements) value matrix of the basis so that
 * evaluation, projection and all quadrature functionals are dense
 * matrix-vector products. Safe to share across threads.
 */
class SphereContext {
 public:
  SphereContext(CRDimension dim, HarmonicBasis basis, QuadratureGrid grid);

  static std::shared_ptr<const SphereContext> make(int n, int D, int exactness = -1,
                                                   const std::optional<std::string>& cache_dir = std::nullopt);

  const CRDimension& dim() const { return dim_; }
  const HarmonicBasis& basis() const { return basis_; }
  const QuadratureGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }  // nodes x elements
  const Eigen::VectorXd& weights() const { return grid_.weights; }

  Eigen::Index num_nodes() const { return grid_.size(); }
  int num_elements() const { return basis_.size(); }

  /// Eigenvalues λ_{j,k} per element.
  const Eigen::VectorXd& lambdas() const { return lambdas_; }

  /// Node values of ζ_j / ζ̄_j for the degree-(0,1) projections.
  Eigen::VectorXcd coordinate_values(int j, bool conjugated) const;

 private:
  CRDimension dim_;
  HarmonicBasis basis_;
  QuadratureGrid grid_;
  Eigen::MatrixXcd values_;
  Eigen::VectorXd lambdas_;
};

using ContextPtr = std::shared_ptr<const SphereContext>;

/**
 * @brief Function on S^{2n+1} as coefficients over the bispherical basis,
 * with lazily cached node values on the workspace grid.
 */
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(ContextPtr ctx, Eigen::VectorXcd coeffs);

  static SpectralField zero(ContextPtr ctx);
  static SpectralField constant(ContextPtr ctx, double value);
  /// Projection of arbitrary node data (grid-exact for band-limited input).
  static SpectralField project_nodes(ContextPtr ctx, const Eigen::VectorXcd& node_values);
  static SpectralField project(ContextPtr ctx, const std::function<Complex(const SpherePoint&)>& f);
  /// Exact projection of a polynomial via symbolic inner products.
  static SpectralField project_polynomial(ContextPtr ctx, const ComplexPolynomial& p);

  const ContextPtr& context() const { return ctx_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Eigen::VectorXcd& coeffs() { return node_cache_.reset(), coeffs_; }

  const Eigen::VectorXcd& node_values() const;  // cached Vc
  Eigen::VectorXd real_node_values() const;

  Complex evaluate(const SpherePoint& p) const;
  ComplexPolynomial to_polynomial() const;

  double l2_norm_sq(Measure m = Measure::Surface) const;  // Parseval (spectral)
  /// Quadrature ‖u‖_p; exact only when |u|^p is a polynomial under the grid.
  double lp_norm(double p, Measure m = Measure::Surface) const;
  double mean(Measure m = Measure::Surface) const;

  bool is_real(double tol = 1e-10) const;
  double min_node_value() const;

  SpectralField operator+(const SpectralField& o) const;
  SpectralField operator-(const SpectralField& o) const;
  SpectralField operator*(double s) const;

 private:
  ContextPtr ctx_;
  Eigen::VectorXcd coeffs_;
  mutable std::optional<Eigen::VectorXcd> node_cache_;
};

/// Normalized real field built from basis element `idx` of H_{j,k}:
/// (Y + conj Y) (or its imaginary sibling when that vanishes), unit L² norm
/// in the requested measure.
SpectralField real_harmonic(ContextPtr ctx, int j, int k, int idx, Measure m = Measure::Probability);

/// Band-limited positivization: alternates nodewise clipping at `floor` with
/// re-projection; if the oscillation persists, blends toward the (positive)
/// mean until every node value is positive. Requires mean(u) > 0.
SpectralField clip_positive(const SpectralField& u, double floor, int max_iters = 12);

}  // namespace crstab
