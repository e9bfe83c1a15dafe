#pragma once

#include <span>
#include <vector>

#include "depthsr/image.hpp"

namespace depthsr {

inline constexpr double kKeysA = -0.5;

/// Keys cubic convolution kernel, support (-2, 2).
double keys_kernel(double x, double a = kKeysA);

namespace detail {
std::vector<double> bicubic_resize_raw(std::span<const double> src, int width, int height,
                                       int out_width, int out_height);
}

/// Separable bicubic resampling to an explicit size. Samples are pixel-center
/// aligned and borders are edge-clamped. When shrinking, the kernel is
/// stretched by the reduction ratio so the result is antialiased.
template <typename Tag>
BasicImage<Tag> bicubic_resize_to(const BasicImage<Tag>& img, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1) throw std::invalid_argument("resize target must be at least 1x1");
  if (img.empty()) throw std::invalid_argument("cannot resize an empty image");
  return BasicImage<Tag>(out_width, out_height,
                         detail::bicubic_resize_raw(img.pixels(), img.width(), img.height(),
                                                    out_width, out_height));
}

/// Output size is round(width * factor) x round(height * factor).
template <typename Tag>
BasicImage<Tag> bicubic_resize(const BasicImage<Tag>& img, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("resize factor must be positive");
  const int ow = static_cast<int>(std::lround(img.width() * factor));
  const int oh = static_cast<int>(std::lround(img.height() * factor));
  return bicubic_resize_to(img, ow, oh);
}

}  // namespace depthsr
