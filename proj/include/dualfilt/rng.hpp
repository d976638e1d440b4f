#pragma once

#include <cstdint>
#include <random>

#include "dualfilt/types.hpp"

namespace dualfilt {

/// Stream tags keep the random numbers used for different purposes on one
/// path statistically independent and individually reproducible.
enum class Stream : std::uint64_t {
  state = 0,    // CTMC initial draw + jump chain
  obs = 1,      // observation noise increments
  process = 2,  // diffusion process noise (linear-Gaussian paths)
};

/// Per-path random stream keyed by (master_seed, path_index, stream tag).
/// Each path owns its engines, so results do not depend on how paths are
/// scheduled across threads.
class PathRng {
 public:
  PathRng(std::uint64_t master_seed, std::uint64_t path_index, Stream tag) {
    const std::uint64_t t = static_cast<std::uint64_t>(tag);
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(path_index),  static_cast<std::uint32_t>(path_index >> 32),
        static_cast<std::uint32_t>(t),           static_cast<std::uint32_t>(t >> 32)};
    engine_.seed(seq);
  }

  double normal() { return normal_(engine_); }
  double exponential() { return exp_(engine_); }  // rate 1
  double uniform() { return uniform_(engine_); }  // [0, 1)

  /// Draw an index with probability proportional to weights (nonnegative).
  int categorical(const Vec& weights) {
    const double total = weights.sum();
    double u = uniform() * total;
    for (int i = 0; i < weights.size(); ++i) {
      u -= weights(i);
      if (u <= 0.0) return i;
    }
    return static_cast<int>(weights.size()) - 1;
  }

  /// Vector of iid standard normals.
  Vec normal_vector(int n) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = normal();
    return z;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exp_{1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace dualfilt
