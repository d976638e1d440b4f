#pragma once

#include <vector>

#include "dualfilt/model.hpp"
#include "dualfilt/paths.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// Marginal law rho_t = exp(A^T t) pi_0 and the expected jump covariation
/// E[Q(X_t)] = expected_covariation(A, rho_t) on the grid nodes.
struct MarginalMoments {
  Mat rho;                 // (n_steps+1) x d
  std::vector<Mat> eq;     // per node, d x d
};
MarginalMoments marginal_moments(const FiniteModel& model,
                                 const TimeGrid& grid);

/// Covariance path of the deterministic LQ dual:
///   dS/dt = S A + A^T S - S H R^{-1} H^T S + E[Q(X_t)],  S_0 = cov(prior),
/// integrated with RK4 (symmetrized each step, PSD monitored). The returned
/// vector holds 2*n_steps+1 matrices on the half-step grid so dependent RK4
/// integrations can read exact midpoint values; entries 2k are the grid nodes.
std::vector<Mat> dre_forward_half_grid(const FiniteModel& model,
                                       const TimeGrid& grid);
std::vector<Mat> dre_forward(const FiniteModel& model, const TimeGrid& grid);

/// Deterministic LQ dual solution for estimating f^T X_T with a control that
/// is a deterministic function of time.
struct LqSolution {
  TimeGrid grid;
  std::vector<Mat> sigma_bar;  // (n_steps+1) node values
  Mat y;                       // (n_steps+1) x d backward costate
  Mat u;                       // (n_steps+1) x m optimal schedule
  double value = 0.0;          // J(u)
  double value_initial = 0.0;  // 1/2 y_0^T Sigma_0 y_0
  double value_running = 0.0;  // integral term (Simpson quadrature)
};

/// Solve the LQ dual: u_t = -R^{-1} H^T SigmaBar_t y_t with the closed-loop
/// backward costate dy/dt = (-A + H R^{-1} H^T SigmaBar_t) y, y_T = f.
LqSolution lq_solve(const FiniteModel& model, const Vec& f,
                    const TimeGrid& grid);

/// Linear-Gaussian dual estimator S_T = y_0^T m_0 - sum_k u_k^T dZ_k for the
/// terminal functional f^T X_T. Equals the Kalman projection f^T m_T up to
/// O(dt).
struct LgDualSolution {
  std::vector<Mat> sigma_bar;  // filter Riccati path on nodes
  Mat y;                       // backward costate
  Mat u;                       // optimal schedule
  double value = 0.0;
  double S_T = 0.0;
};
LgDualSolution dual_estimator_lg(const LinearGaussianModel& model,
                                 const Vec& f, const ObsPath& obs);

/// Integrate the filter Riccati forward and the control Riccati backward in
/// reversed time and return the sup-norm deviation between the two paths
/// (identical trajectories up to integration error).
double riccati_duality_check(const LinearGaussianModel& model,
                             const TimeGrid& grid);

}  // namespace dualfilt
