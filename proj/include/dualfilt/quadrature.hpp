#pragma once

#include "dualfilt/types.hpp"

namespace dualfilt {

/// Composite Simpson rule on uniformly spaced samples (3/8 rule on the last
/// three intervals when the interval count is odd). Falls back to the
/// trapezoid rule for fewer than three samples.
double simpson_uniform(const Vec& values, double spacing);

/// Gauss-Hermite nodes and weights for integrals against exp(-x^2)
/// (Golub-Welsch via the symmetric tridiagonal Jacobi matrix).
struct GaussHermite {
  Vec nodes;
  Vec weights;
  explicit GaussHermite(int n);

  /// Nodes/weights transformed so that sum_i w_i g(x_i) approximates
  /// E[g(X)] for X ~ N(0,1).
  Vec standard_normal_nodes() const;
  Vec standard_normal_weights() const;
};

}  // namespace dualfilt
