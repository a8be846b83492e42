#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "meshlab/kernels.hpp"

namespace meshlab::kernels::avx2 {

void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d yi = _mm256_set1_pd(ys[i]);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs.data() + j));
      const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys.data() + j));
      const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      _mm256_storeu_pd(row + j, _mm256_sqrt_pd(sq));
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
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(voltages.data() + i);
    const __m256d c = _mm256_loadu_pd(costs.data() + i);
    // max(a, b) returns b when a is NaN; voltages are never NaN here.
    _mm256_storeu_pd(voltages.data() + i, _mm256_max_pd(_mm256_sub_pd(v, c), zero));
  }
  for (; i < n; ++i) {
    voltages[i] = std::max(voltages[i] - costs[i], 0.0);
  }
}

}  // namespace meshlab::kernels::avx2
