#include "depthsr/color.hpp"

#include <stdexcept>
#include <string>

namespace depthsr {

GuideImage make_guide(int width, int height, std::vector<double> data) {
  return clamp_guide(GuideImage(width, height, std::move(data)));
}

GuideImage clamp_guide(GuideImage img) {
  for (double& v : img.pixels()) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite guide pixel");
    v = std::clamp(v, 0.0, 1.0);
  }
  return img;
}

GuideImage to_grayscale(const RgbImage& rgb) {
  if (rgb.channels != 3) {
    throw std::invalid_argument("to_grayscale expects 3 channels, got " +
                                std::to_string(rgb.channels));
  }
  const std::size_t n = static_cast<std::size_t>(rgb.width) * rgb.height;
  if (rgb.data.size() != 3 * n) throw std::invalid_argument("RGB buffer length mismatch");

  std::vector<double> gray(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* px = &rgb.data[3 * i];
    gray[i] = kLumaR * px[0] + kLumaG * px[1] + kLumaB * px[2];
  }
  return make_guide(rgb.width, rgb.height, std::move(gray));
}

}  // namespace depthsr
