#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dualfilt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Uniform discretization of [0, T].
struct TimeGrid {
  double horizon = 1.0;
  int n_steps = 1000;

  TimeGrid() = default;
  TimeGrid(double T, int steps) : horizon(T), n_steps(steps) {
    if (!(T > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
    if (steps < 1) throw std::invalid_argument("TimeGrid: n_steps must be >= 1");
  }

  double dt() const { return horizon / n_steps; }
  double t(int k) const { return horizon * k / n_steps; }
  int n_nodes() const { return n_steps + 1; }

  bool operator==(const TimeGrid& other) const {
    return horizon == other.horizon && n_steps == other.n_steps;
  }
};

/// Validate a vector as a probability distribution. Vectors within `tol` of
/// the simplex are clipped and renormalized; anything further off is rejected.
inline Vec validated_simplex(Vec p, double tol = 1e-9) {
  if (p.size() == 0) throw std::invalid_argument("simplex: empty vector");
  for (int i = 0; i < p.size(); ++i) {
    if (!(p(i) > -tol))
      throw std::invalid_argument("simplex: negative entry beyond tolerance");
    if (p(i) < 0.0) p(i) = 0.0;
  }
  const double s = p.sum();
  if (std::abs(s - 1.0) > std::max(tol, 1e-12 * p.size()))
    throw std::invalid_argument("simplex: mass not 1 within tolerance");
  return p / s;
}

/// Clip negatives and renormalize in place. Returns false when no positive
/// mass survives (the caller decides whether that is fatal).
inline bool clip_and_renormalize(Vec& p) {
  p = p.cwiseMax(0.0);
  const double s = p.sum();
  if (!(s > 0.0)) return false;
  p /= s;
  return true;
}

}  // namespace dualfilt
