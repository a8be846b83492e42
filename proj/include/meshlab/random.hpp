#pragma once

#include <cstdint>
#include <random>

namespace meshlab {

// std::mt19937_64's sequence is fixed by the standard but the distributions
// are not, so draws go through this to stay identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace meshlab
