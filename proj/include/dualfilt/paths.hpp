#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualfilt/model.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// Piecewise-constant trajectory of the hidden chain, stored exactly through
/// its jump times (no time-step error).
struct StatePath {
  std::vector<double> jump_times;  // strictly increasing, in (0, T)
  std::vector<int> states;         // states.size() == jump_times.size() + 1

  int state_at(double t) const;
  std::vector<int> at_nodes(const TimeGrid& grid) const;
};

/// Observation increments on a time grid; Z_0 = 0 and Z at node k is the sum
/// of the first k increments.
struct ObsPath {
  TimeGrid grid;
  Mat dZ;  // n_steps x m

  Mat cumulative() const;
  /// Sum groups of `factor` increments into a coarser ObsPath (grid with
  /// n_steps/factor steps). Used to couple runs across dt refinements.
  ObsPath aggregate(int factor) const;
};

/// Exact jump-chain simulation of the hidden Markov chain: the holding time
/// in state i is Exp(-A_ii) and the next state j is drawn with probability
/// A_ij / (-A_ii).
StatePath sample_ctmc(const FiniteModel& model, const TimeGrid& grid,
                      std::uint64_t master_seed, std::uint64_t path_index);

/// Observation increments dZ_k = (integral of h(X_s) over the step, exact in
/// the jump times) + sqrt(dt) R^{1/2} xi_k.
ObsPath sample_obs(const StatePath& path, const FiniteModel& model,
                   const TimeGrid& grid, std::uint64_t master_seed,
                   std::uint64_t path_index);

/// Euler-Maruyama sample of the linear-Gaussian state with its observations.
struct LgPath {
  Mat states;  // (n_steps+1) x d
  ObsPath obs;
};
LgPath sample_lg_path(const LinearGaussianModel& model, const TimeGrid& grid,
                      std::uint64_t master_seed, std::uint64_t path_index);

/// Innovation increments dI_k = dZ_k - (H^T pi_k) dt for a (n_steps+1) x d
/// posterior path. Throws on a grid mismatch.
Mat innovation(const ObsPath& obs, const Mat& pi_nodes, const Mat& H);

/// A reproducible Monte Carlo bundle. Paths are regenerated on demand from
/// (master_seed, path_index), so a bundle is cheap to hold at any N and
/// bit-identical regardless of thread count or evaluation order. Call
/// materialize() to keep the paths in memory (export, small studies).
class PathBundle {
 public:
  PathBundle() = default;
  PathBundle(FiniteModel model, TimeGrid grid, int n_paths,
             std::uint64_t master_seed);

  const FiniteModel& model() const { return model_; }
  const TimeGrid& grid() const { return grid_; }
  int size() const { return n_paths_; }
  std::uint64_t master_seed() const { return master_seed_; }

  StatePath state_path(int i) const;
  ObsPath obs_path(int i) const;

  void materialize(int threads = 0);
  bool materialized() const { return materialized_; }

 private:
  FiniteModel model_;
  TimeGrid grid_;
  int n_paths_ = 0;
  std::uint64_t master_seed_ = 0;
  bool materialized_ = false;
  std::vector<StatePath> states_;
  std::vector<ObsPath> obs_;
};

/// Parallel bundle construction (materialized). The serial variant is the
/// reference implementation used to pin down the parallel one in tests.
PathBundle sample_bundle(const FiniteModel& model, const TimeGrid& grid,
                         int n_paths, std::uint64_t master_seed,
                         int threads = 0);
PathBundle sample_bundle_serial(const FiniteModel& model, const TimeGrid& grid,
                                int n_paths, std::uint64_t master_seed);

/// Write one CSV per path (columns t, state, dZ_1..dZ_m) plus manifest.json
/// describing (model, grid, seed, N) into `dir`.
void export_bundle_csv(const PathBundle& bundle, const std::string& dir,
                       int threads = 0);

}  // namespace dualfilt
