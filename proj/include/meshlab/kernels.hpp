#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference and, where
// the target supports it, a vector variant; the dispatching entry points pick
// one at runtime. Variants are required to agree bit-for-bit with the scalar
// reference (no FMA, IEEE sqrt), so results never depend on the host CPU.
namespace meshlab::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

/// Best variant this process will use. Honors MESHLAB_SIMD=scalar.
Isa active_isa() noexcept;

/// Whether a given variant was compiled in and is runnable on this host.
bool isa_available(Isa isa) noexcept;

// out[i * n + j] = |p_i - p_j| for n = xs.size(); out must hold n * n values.
void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);

// voltages[i] = max(voltages[i] - costs[i], 0).
void apply_decay(std::span<double> voltages, std::span<const double> costs);

namespace scalar {
void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);
void apply_decay(std::span<double> voltages, std::span<const double> costs);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);
void apply_decay(std::span<double> voltages, std::span<const double> costs);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void pairwise_distances(std::span<const double> xs, std::span<const double> ys,
                        std::span<double> out);
void apply_decay(std::span<double> voltages, std::span<const double> costs);
}  // namespace neon
#endif

}  // namespace meshlab::kernels
