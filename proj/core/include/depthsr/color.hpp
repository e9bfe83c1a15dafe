#pragma once

#include <vector>

#include "depthsr/image.hpp"

namespace depthsr {

/// Interleaved RGB image, values in [0, 1].
struct RgbImage {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<double> data;
};

// ITU-R BT.601 luma weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

/// Luma conversion; throws std::invalid_argument unless channels == 3.
GuideImage to_grayscale(const RgbImage& rgb);

}  // namespace depthsr
