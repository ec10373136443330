#include "relaysim/kernels.hpp"

namespace relaysim::kernels::scalar {

void squared_distances(const double* xs, const double* ys, std::size_t n, double x0, double y0,
                       double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - x0;
    const double dy = ys[i] - y0;
    out[i] = dx * dx + dy * dy;
  }
}

void link_probabilities(const double* dist, std::size_t n, const LinkParams& lp, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = link_probability(dist[i], lp);
}

}  // namespace relaysim::kernels::scalar
