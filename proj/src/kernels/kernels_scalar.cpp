#include <algorithm>
#include <cmath>

#include "meshlab/kernels.hpp"

namespace meshlab::kernels::scalar {

void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      out[i * n + j] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

void apply_decay(std::span<double> voltages, std::span<const double> costs) {
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    voltages[i] = std::max(voltages[i] - costs[i], 0.0);
  }
}

}  // namespace meshlab::kernels::scalar
