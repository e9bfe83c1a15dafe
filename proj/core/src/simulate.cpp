#include "depthsr/simulate.hpp"

#include <random>

#include "depthsr/resample.hpp"

namespace depthsr {

DepthImage add_depth_noise(const DepthImage& img, double noise_sigma_base, double depth_max,
                           std::uint64_t rng_seed) {
  if (noise_sigma_base < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
  DepthImage out = img;
  if (noise_sigma_base == 0.0 || depth_max <= 0.0) return out;

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (double& d : out.pixels()) {
    const double sigma = noise_sigma_base * (d / depth_max);
    d += sigma * unit(rng);
  }
  return out;
}

DepthImage simulate_lr(const DepthImage& hr, int factor, double noise_sigma_base, std::uint64_t rng_seed) {
  if (factor < 2) throw std::invalid_argument("simulate_lr factor must be >= 2");
  if (!all_finite(hr)) throw std::invalid_argument("simulate_lr: non-finite input");

  const int pad_x = (factor - hr.width() % factor) % factor;
  const int pad_y = (factor - hr.height() % factor) % factor;
  const DepthImage padded = (pad_x || pad_y) ? pad_replicate(hr, 0, 0, pad_x, pad_y) : hr;

  const DepthImage lr = bicubic_resize_to(padded, padded.width() / factor, padded.height() / factor);
  return add_depth_noise(lr, noise_sigma_base, min_max(hr).second, rng_seed);
}

}  // namespace depthsr
