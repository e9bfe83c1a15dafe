#pragma once

#include <cstdint>

#include "depthsr/image.hpp"

namespace depthsr {

/// Low-resolution acquisition model: bicubic reduction by `factor` followed by
/// zero-mean Gaussian noise whose deviation grows linearly with depth,
/// sigma(d) = noise_sigma_base * d / max(hr). Images whose size is not a
/// multiple of `factor` are edge-padded first. The result depends only on the
/// arguments.
DepthImage simulate_lr(const DepthImage& hr, int factor, double noise_sigma_base, std::uint64_t rng_seed);

/// Noise-only half of `simulate_lr`, exposed for testing the noise law.
/// `depth_max` is the normalizer of the depth-proportional deviation.
DepthImage add_depth_noise(const DepthImage& img, double noise_sigma_base, double depth_max,
                           std::uint64_t rng_seed);

}  // namespace depthsr
