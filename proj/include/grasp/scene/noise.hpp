#pragma once

#include "grasp/core/rng.hpp"
#include "grasp/core/types.hpp"

namespace grasp {

// Additive Gaussian depth noise on valid pixels, drawn in row-major order
// from a seeded generator. sigma = 0 returns the input bit-identically.
inline DepthImage add_depth_noise(const DepthImage& depth, double sigma, uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_depth_noise: sigma must be >= 0");
  if (sigma == 0.0) return depth;
  DepthImage out = depth;
  Rng rng(mix_seed(seed, 0xd5a1ce11ULL));
  for (auto& d : out.data) {
    if (d > 0.0f && std::isfinite(d)) {
      double noisy = d + sigma * rng.normal();
      d = static_cast<float>(std::max(noisy, 1e-6));
    }
  }
  return out;
}

}  // namespace grasp
