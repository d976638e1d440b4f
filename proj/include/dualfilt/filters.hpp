#pragma once

#include <stdexcept>
#include <vector>

#include "dualfilt/model.hpp"
#include "dualfilt/paths.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// Raised when a filter's renormalization loses all mass (time step too large
/// for the noise scale) or a Riccati iterate leaves the PSD cone.
struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Posterior trajectory of a finite-state filter.
struct FilterTrajectory {
  TimeGrid grid;
  Mat pi;                  // (n_steps+1) x d
  std::vector<Mat> Sigma;  // per node, covariance_of(pi_k)
  Mat dI;                  // n_steps x m innovation increments
  double min_pre_renorm = 0.0;  // most negative entry seen before clipping
};

/// Mean/covariance trajectory of a Kalman-type filter.
struct KalmanTrajectory {
  TimeGrid grid;
  Mat mean;                // (n_steps+1) x d
  std::vector<Mat> cov;    // per node
};

/// Exact nonlinear filter of the chain, integrated by Euler-Maruyama:
///   pi_{k+1} = pi_k + A^T pi_k dt + Sigma_k H R^{-1} (dZ_k - H^T pi_k dt),
/// followed by clip-to-nonnegative and renormalize. Sigma_k is recomputed
/// from pi_k at every node.
FilterTrajectory wonham_filter(const FiniteModel& model, const ObsPath& obs);

/// Integrate the covariance Riccati SDE
///   dS = (A^T S + S A + pi(Q) - S H R^{-1} H^T S) dt
///        + diag(S H R^{-1} dI) - S H R^{-1} dI pi^T - pi dI^T R^{-1} H^T S
/// from S_0 = covariance_of(pi_0), along a Wonham trajectory's (pi, dI).
/// Returned for comparison against covariance_of(pi_k).
std::vector<Mat> sigma_dre_step(const FilterTrajectory& filt,
                                const FiniteModel& model);

/// Kalman-Bucy filter: the covariance Riccati ODE is deterministic and
/// integrated with RK4; the mean follows the observations by Euler-Maruyama.
KalmanTrajectory kalman_bucy(const LinearGaussianModel& model,
                             const ObsPath& obs);

/// Finite-difference filter for a 1-d diffusion: the chain from
/// grid_generator run through wonham_filter. Node weights are probabilities;
/// divide by the spacing for a density.
struct GridFilterResult {
  FilterTrajectory traj;
  Vec nodes;
  double spacing = 0.0;

  /// Posterior mean and variance of x under the node weights at node k.
  double mean_at(int k) const;
  double variance_at(int k) const;
};
GridFilterResult grid_kushner(const Diffusion1dModel& model, int n,
                              const ObsPath& obs);

/// Kalman filter for the Markov chain built from the LQ covariance:
///   dXbar = A^T Xbar dt + SigmaBar_t H R^{-1} (dZ - H^T Xbar dt),
/// Xbar_0 = prior. SigmaBar comes from lq::dre_forward; a convenience
/// overload computes it. Sub-optimal relative to the Wonham filter.
KalmanTrajectory mc_kalman(const FiniteModel& model, const ObsPath& obs,
                           const std::vector<Mat>& sigma_bar);
KalmanTrajectory mc_kalman(const FiniteModel& model, const ObsPath& obs);

}  // namespace dualfilt
