#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dualfilt/filters.hpp"
#include "dualfilt/model.hpp"
#include "dualfilt/paths.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

// ---------------------------------------------------------------------------
// Function basis on the simplex for regression solvers.
// ---------------------------------------------------------------------------

/// Basis of functions of pi: constant, the first d-1 coordinates (the last is
/// redundant on the simplex), and optionally the quadratic monomials in those
/// coordinates.
struct BasisSpec {
  bool quadratic = false;

  int size(int d) const;
  Vec eval(const Vec& pi) const;
};

// ---------------------------------------------------------------------------
// BSDE solutions: per-step evaluable (Y, V) as functions of pi.
// ---------------------------------------------------------------------------

class BsdeSolution {
 public:
  virtual ~BsdeSolution() = default;
  virtual Vec Y_at(int k, const Vec& pi) const = 0;
  virtual Mat V_at(int k, const Vec& pi) const = 0;
  virtual int n_steps() const = 0;
};

/// Deterministic-control solution: Y is a function of time only and V = 0.
class DeterministicBsdeSolution : public BsdeSolution {
 public:
  DeterministicBsdeSolution(Mat y_nodes, int m)
      : y_(std::move(y_nodes)), m_(m) {}
  Vec Y_at(int k, const Vec&) const override { return y_.row(k); }
  Mat V_at(int, const Vec& pi) const override {
    return Mat::Zero(pi.size(), m_);
  }
  int n_steps() const override { return static_cast<int>(y_.rows()) - 1; }
  const Mat& nodes() const { return y_; }

 private:
  Mat y_;
  int m_;
};

/// Raised by the regression solver when the design matrix over the visited
/// pi-region is rank deficient.
struct RegressionRankError : std::runtime_error {
  int time_index;
  explicit RegressionRankError(int k)
      : std::runtime_error("regression basis is rank deficient at step " +
                           std::to_string(k)),
        time_index(k) {}
};

/// Least-squares Monte Carlo solution: per-step coefficient tables mapping
/// basis(pi) to Y (and to V).
class RegressionBsdeSolution : public BsdeSolution {
 public:
  RegressionBsdeSolution(BasisSpec basis, int d, int m,
                         std::vector<Mat> y_coeff, std::vector<Mat> v_coeff);
  Vec Y_at(int k, const Vec& pi) const override;
  Mat V_at(int k, const Vec& pi) const override;
  int n_steps() const override;

  const BasisSpec& basis() const { return basis_; }
  const std::vector<Mat>& y_coeff() const { return y_coeff_; }  // p x d
  const std::vector<Mat>& v_coeff() const { return v_coeff_; }  // p x (d*m)
  int state_dim() const { return d_; }
  int obs_dim() const { return m_; }

 private:
  BasisSpec basis_;
  int d_ = 0;
  int m_ = 0;
  std::vector<Mat> y_coeff_;
  std::vector<Mat> v_coeff_;
};

class SynthesisBsdeSolution;  // defined below

// ---------------------------------------------------------------------------
// Control policies.
// ---------------------------------------------------------------------------

/// A control input as a function the filter can supply: a deterministic
/// schedule of m-vectors, an arbitrary feedback map (k, t, pi) -> u, or the
/// optimal-control law read through regressed coefficient tables.
class ControlPolicy {
 public:
  enum class Kind { deterministic, feedback, regression_feedback };

  ControlPolicy() = default;  // empty; assign from a factory before use

  static ControlPolicy deterministic(Mat schedule);  // (n_steps+1) x m
  static ControlPolicy feedback(
      std::function<Vec(int, double, const Vec&)> fn, int m);
  /// Optimal-control law u = -R^{-1} H^T cov(pi) Y(pi) - V(pi)^T pi through a
  /// solution's tables. Regression solutions serialize; others are
  /// feedback-only.
  static ControlPolicy optimal_law(std::shared_ptr<const BsdeSolution> sol,
                                   const FiniteModel& model);

  Kind kind() const { return kind_; }
  int control_dim() const { return m_; }
  Vec control(int k, double t, const Vec& pi) const;
  const Mat& schedule() const;

  nlohmann::json to_json() const;
  static ControlPolicy from_json(const nlohmann::json& j,
                                 const FiniteModel& model);

 private:
  Kind kind_ = Kind::deterministic;
  int m_ = 0;
  Mat schedule_;
  std::function<Vec(int, double, const Vec&)> feedback_;
  std::shared_ptr<const BsdeSolution> law_solution_;
};

// ---------------------------------------------------------------------------
// Dual trajectories and reports.
// ---------------------------------------------------------------------------

struct DualTrajectory {
  TimeGrid grid;
  Mat Y;                // (n_steps+1) x d
  std::vector<Mat> V;   // n_steps+1 matrices d x m (entry n unused)
  Mat P;                // (n_steps+1) x d co-state (empty if not computed)
  Mat U;                // (n_steps+1) x m applied control
  Vec S;                // n_steps+1 running estimator
};

struct CostReport {
  double J_total = 0.0;
  double term_initial = 0.0;  // E 1/2 |Y_0^T (X_0 - pi_0)|^2
  double term_running = 0.0;  // E sum_k L dt
  double mc_std_error = 0.0;
  int n_paths = 0;
};

struct GapReport {
  double J = 0.0;
  double J_se = 0.0;
  double half_mse = 0.0;
  double half_mse_se = 0.0;
  double gap = 0.0;      // mean over paths of (cost - squared error)/1
  double gap_se = 0.0;   // paired standard error
  double bias_allowance = 0.0;
  bool pass = false;
  int n_paths = 0;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

/// Backward RK4 integration of dY/dt = -(A Y + H u_t) from Y_T = f; the
/// schedule is interpolated linearly between nodes. Returns Y on the nodes.
Mat bsde_solve_deterministic(const Mat& u_schedule, const Vec& f,
                             const FiniteModel& model, const TimeGrid& grid);

/// Dual cost of a policy over a bundle: MC average of
/// 1/2 |Y_0^T(X_0 - pi_0)|^2 + sum_k L(Y_k, V_k, U_k; pi_k) dt.
CostReport cost_J(const ControlPolicy& policy, const BsdeSolution& solution,
                  const Vec& f, const PathBundle& bundle, int threads = 0);

/// Convenience overload for deterministic policies (solves the ODE first).
CostReport cost_J(const ControlPolicy& policy, const Vec& f,
                  const PathBundle& bundle, int threads = 0);

/// Closed-form value of a deterministic schedule:
/// 1/2 Y_0^T Sigma_0 Y_0 + int (1/2 u^T R u + 1/2 Y^T rho_t(Q) Y) dt
/// with rho_t the marginal law, by Simpson quadrature.
double cost_deterministic_closed_form(const Mat& u_schedule, const Vec& f,
                                      const FiniteModel& model,
                                      const TimeGrid& grid);

/// Running estimator S_k = pi0_Y0 - sum_{j<k} U_j^T dZ_j (left-point sums).
Vec estimator_S(const Mat& u_applied, double pi0_Y0, const ObsPath& obs);

/// Both sides of the cost identity J(U) = 1/2 E|S_T - f^T X_T|^2, their
/// paired difference and its standard error. Passes when
/// |gap| <= 3 * gap_se + bias_allowance.
GapReport duality_gap(const ControlPolicy& policy, const BsdeSolution& solution,
                      const Vec& f, const PathBundle& bundle,
                      double bias_allowance = 0.0, int threads = 0);

/// Optimal control law u = -R^{-1} H^T covariance_of(pi) Y - V^T pi.
Vec optimal_control_law(const Vec& Y, const Mat& V, const Vec& pi,
                        const FiniteModel& model);

/// Forward Euler-Maruyama integration of the co-state equation
///   dP = (A^T P + pi(Q) Y) dt + (diag(P) - P pi^T) H R^{-1} dI
///        + (pi U^T + diag(pi) V) dI,   P_0 = Sigma_0 Y_0.
Mat costate_forward(const Mat& Y, const std::vector<Mat>& V, const Mat& U,
                    const FilterTrajectory& filt, const FiniteModel& model);

/// Least-squares Monte Carlo backward induction for the BSDE under a given
/// policy: V from the regression of Y_{k+1} dI_k^T / dt (times R^{-1}), Y from
/// the regression of the one-step backward value, both onto basis(pi_k).
/// n_paths_cap bounds the number of bundle paths used for the regressions.
RegressionBsdeSolution bsde_solve_regression(const ControlPolicy& policy,
                                             const Vec& f,
                                             const PathBundle& bundle,
                                             const BasisSpec& basis,
                                             int n_paths_cap = 0,
                                             int threads = 0);

// ---------------------------------------------------------------------------
// Synthesis of the optimal trajectory on a simplex grid (reference oracle).
// ---------------------------------------------------------------------------

struct SynthesisOptions {
  int grid_points = 201;   // nodes per simplex edge
  int quad_points = 8;     // Gauss-Hermite nodes per observation channel
  double fd_step = 0.0;    // 0 -> half the grid spacing
};

/// Value tables y(t_k, pi) for the optimally controlled BSDE, built backward
/// on a simplex grid with Gauss-Hermite quadrature over the innovation
/// increment; V comes from a central finite-difference stencil around pi
/// (shrunk automatically at the boundary; error below 1e-8). Supports d <= 3
/// and m <= 2; accuracy is O(dt + grid spacing + stencil step).
class SynthesisBsdeSolution : public BsdeSolution {
 public:
  SynthesisBsdeSolution(const Vec& f, const FiniteModel& model,
                        const TimeGrid& grid, const SynthesisOptions& options);

  Vec Y_at(int k, const Vec& pi) const override;
  Mat V_at(int k, const Vec& pi) const override;
  int n_steps() const override { return grid_.n_steps; }
  const TimeGrid& time_grid() const { return grid_; }

 private:
  friend class SynthesisImpl;
  TimeGrid grid_;
  FiniteModel model_;
  SynthesisOptions options_;
  double fd_step_ = 0.0;
  std::vector<Vec> grid_nodes_;    // simplex grid points
  std::vector<Mat> y_tables_;      // per time node: n_grid x d
  Vec eval_table(int k, const Vec& pi) const;
};

/// Optimal dual trajectory along one realized observation path: Wonham
/// filter, table-based (Y, V), the optimal-control law, the running
/// estimator, and the co-state from costate_forward.
DualTrajectory bsde_solve_optimal_synthesis(const Vec& f, const ObsPath& obs,
                                            const FiniteModel& model,
                                            const SynthesisBsdeSolution& sol);

/// Full per-path dual evaluation under any policy/solution pair.
struct PathDualEval {
  FilterTrajectory filt;
  DualTrajectory dual;
  int x0 = 0;
  int xT = 0;
};
PathDualEval evaluate_dual_path(const ControlPolicy& policy,
                                const BsdeSolution& solution, const Vec& f,
                                const FiniteModel& model,
                                const StatePath& state, const ObsPath& obs,
                                bool with_costate = false);

/// Sup-norm discrepancy max_k |pi_k^T Y_k - S_k| between the running
/// estimate and the estimator path. Vanishes along optimal trajectories.
double running_estimator_check(const DualTrajectory& dual,
                               const FilterTrajectory& filt);

// ---------------------------------------------------------------------------
// Diagnostics.
// ---------------------------------------------------------------------------

/// Per-node mean of M_k = V(Y_k; pi_k) - sum_{j<k} L_j dt over the bundle,
/// with a t-statistic for a linear trend (per-path least-squares slopes).
/// Flat (|stat| small) iff the policy is optimal; negative drift otherwise.
struct MartingaleReport {
  Vec t_nodes;
  Vec mean_curve;
  double trend_stat = 0.0;
  double slope_mean = 0.0;
  double slope_se = 0.0;
  int n_paths = 0;
};
MartingaleReport martingale_diagnostic(const ControlPolicy& policy,
                                       const BsdeSolution& solution,
                                       const Vec& f, const PathBundle& bundle,
                                       int curve_points = 101,
                                       int threads = 0);

/// MC estimate of E[V(f; pi_T)], the minimal dual cost.
struct ValueEstimate {
  double value = 0.0;
  double se = 0.0;
  int n_paths = 0;
};
ValueEstimate value_function(const Vec& f, const PathBundle& bundle,
                             int threads = 0);

/// Policy iteration: start from the LQ-optimal deterministic schedule, then
/// alternate regression BSDE solves with the optimal-control law.
struct PolicyIterationResult {
  std::vector<CostReport> costs;  // J(U^0), J(U^1), ...
  ControlPolicy final_policy;
  std::shared_ptr<RegressionBsdeSolution> final_solution;
};
PolicyIterationResult policy_iteration(const Vec& f, const PathBundle& bundle,
                                       const BasisSpec& basis, int n_iters,
                                       int n_paths_cap = 0, int threads = 0);

}  // namespace dualfilt
