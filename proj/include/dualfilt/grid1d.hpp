#pragma once

#include "dualfilt/model.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// A 1-d diffusion reduced to a finite chain on n uniform nodes.
struct Grid1d {
  FiniteModel model;
  Vec nodes;       // n grid points, x_lo..x_hi inclusive
  double spacing;  // distance between nodes
};

/// Discretize the generator a(x) d/dx + 1/2 sigma(x)^2 d^2/dx^2 onto n uniform
/// nodes: central differences for the diffusion term, upwind differences for
/// the drift term (keeps off-diagonal rates nonnegative), reflecting
/// (zero-flux) boundary rows. The observation matrix has row i = h(x_i)^T and
/// the prior is the density sampled at the nodes and renormalized.
Grid1d grid_generator(const Diffusion1dModel& model, int n);

}  // namespace dualfilt
