#include "meshlab/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace meshlab::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() noexcept {
  if (const char* forced = std::getenv("MESHLAB_SIMD")) {
    if (std::string_view(forced) == "scalar") return Isa::Scalar;
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = detect();
  return isa;
}

void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::pairwise_distances(xs, ys, out);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::pairwise_distances(xs, ys, out);
#endif
    default: return scalar::pairwise_distances(xs, ys, out);
  }
}

void apply_decay(std::span<double> voltages, std::span<const double> costs) {
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::apply_decay(voltages, costs);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::apply_decay(voltages, costs);
#endif
    default: return scalar::apply_decay(voltages, costs);
  }
}

}  // namespace meshlab::kernels
