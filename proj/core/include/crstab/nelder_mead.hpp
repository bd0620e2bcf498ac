#pragma once

#include <Eigen/Dense>
#include <functional>

namespace crstab {

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/**
 * @brief Standard Nelder-Mead simplex search (reflection/expansion/contraction/
 * shrink), deterministic for a given starting point.
 *
 * Terminates when the simplex diameter drops below `xtol`, the function spread
 * below `ftol`, or the evaluation budget is exhausted.
 */
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step, long max_evals,
                             double xtol = 1e-10, double ftol = 1e-15);

/// Golden-section minimization of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_iter = 200);

}  // namespace crstab
