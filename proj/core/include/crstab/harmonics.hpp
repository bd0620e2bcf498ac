#pragma once

#include <optional>
#include <string>

#include "crstab/polynomial.hpp"

namespace crstab {

/// One orthonormal element of H_{j,k}, stored as a polynomial representative
/// (its restriction to the sphere is the actual basis function).
struct BasisElement {
  int j = 0, k = 0;
  int idx = 0;  // construction index within the (j,k) block
  double lambda = 0.0;
  ComplexPolynomial poly;
};

/**
 * @brief Orthonormal bispherical-harmonic bases H_{j,k} for all j+k <= D.
 *
 * Within each bidegree, the elements are produced by pivoted Gram-Schmidt of
 * the monomials ζ^α ζ̄^β (|α| = j, |β| = k) against all previously built
 * H_{j-m,k-m} and against each other, under the exact L²(surface) inner
 * product. Blocks with j < k are the complex conjugates of their (k,j)
 * mirrors, so real fields have conjugate-paired coefficients.
 *
 * Element order is lexicographic in (j+k, j, idx) and deterministic.
 */
class HarmonicBasis {
 public:
  int n = 1;
  int max_degree = 0;
  std::vector<BasisElement> elements;

  /// dim H_{j,k} = (j+k+n) (j+n-1)! (k+n-1)! / (n! (n-1)! j! k!).
  static long dimension_formula(int n, int j, int k);

  static HarmonicBasis build(int n, int D);

  int size() const { return static_cast<int>(elements.size()); }
  /// [begin, begin+count) range of the (j,k) block in `elements`.
  std::pair<int, int> block(int j, int k) const;
  /// Index of the conjugate element: block (k,j), same idx.
  int conjugate_index(int i) const;

  /// Relative L² residual ‖L Y - λ_{j,k} Y‖ / ‖Y‖ with L applied symbolically.
  double eigen_residual(int i) const;

  void save(const std::string& path) const;
  static HarmonicBasis load(const std::string& path);
  /// Reuse a cached basis keyed by (n, D) from cache_dir when possible.
  static HarmonicBasis load_or_build(int n, int D, const std::optional<std::string>& cache_dir);
};

}  // namespace crstab
