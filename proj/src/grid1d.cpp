#include "dualfilt/grid1d.hpp"

#include <algorithm>
#include <stdexcept>

namespace dualfilt {

Grid1d grid_generator(const Diffusion1dModel& model, int n) {
  if (n < 3) throw std::invalid_argument("grid_generator: need n >= 3 nodes");
  model.check(std::max(n, 129));

  const double spacing = (model.x_hi - model.x_lo) / (n - 1);
  Vec nodes(n);
  for (int i = 0; i < n; ++i) nodes(i) = model.x_lo + i * spacing;

  Mat A = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double x = nodes(i);
    const double s = model.sigma(x);
    if (s < model.sigma_floor)
      throw std::invalid_argument(
          "grid_generator: sigma below the ellipticity floor at a node");
    const double diffusion_rate = 0.5 * s * s / (spacing * spacing);
    const double a = model.drift(x);
    double right = (i + 1 < n) ? diffusion_rate + std::max(a, 0.0) / spacing : 0.0;
    double left = (i > 0) ? diffusion_rate + std::max(-a, 0.0) / spacing : 0.0;
    if (i + 1 < n) A(i, i + 1) = right;
    if (i > 0) A(i, i - 1) = left;
    A(i, i) = -(right + left);
  }

  Mat H(n, model.m);
  for (int i = 0; i < n; ++i) {
    const Vec h = model.obs(nodes(i));
    if (h.size() != model.m)
      throw std::invalid_argument("grid_generator: obs dimension mismatch");
    H.row(i) = h.transpose();
  }

  Vec prior(n);
  for (int i = 0; i < n; ++i) prior(i) = std::max(model.prior_density(nodes(i)), 0.0);
  const double mass = prior.sum();
  if (!(mass > 0.0))
    throw std::invalid_argument("grid_generator: prior has no mass on the grid");
  prior /= mass;

  Grid1d out;
  out.model = FiniteModel(std::move(A), std::move(H), model.R, std::move(prior),
                          model.T);
  out.nodes = std::move(nodes);
  out.spacing = spacing;
  return out;
}

}  // namespace dualfilt
