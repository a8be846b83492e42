#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "meshlab/kernels.hpp"

namespace meshlab::kernels::neon {

void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xi = vdupq_n_f64(xs[i]);
    const float64x2_t yi = vdupq_n_f64(ys[i]);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const float64x2_t dx = vsubq_f64(xi, vld1q_f64(xs.data() + j));
      const float64x2_t dy = vsubq_f64(yi, vld1q_f64(ys.data() + j));
      const float64x2_t sq = vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy));
      vst1q_f64(row + j, vsqrtq_f64(sq));
    }
    for (; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      row[j] = std::sqrt(dx * dx + dy * dy);
    }
  }
}

void apply_decay(std::span<double> voltages, std::span<const double> costs) {
  const std::size_t n = voltages.size();
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(voltages.data() + i);
    const float64x2_t c = vld1q_f64(costs.data() + i);
    vst1q_f64(voltages.data() + i, vmaxq_f64(vsubq_f64(v, c), zero));
  }
  for (; i < n; ++i) {
    voltages[i] = std::max(voltages[i] - costs[i], 0.0);
  }
}

}  // namespace meshlab::kernels::neon
