#include "depthsr/resample.hpp"

#include <algorithm>
#include <cmath>

namespace depthsr {

double keys_kernel(double x, double a) {
  const double ax = std::abs(x);
  if (ax <= 1.0) return ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0;
  if (ax < 2.0) return ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a;
  return 0.0;
}

namespace detail {
namespace {

struct Taps {
  std::vector<int> index;    // clamped source indices
  std::vector<double> weight;  // normalized
};

// One weight table per output sample along an axis.
std::vector<Taps> axis_taps(int in_len, int out_len) {
  const double scale = static_cast<double>(out_len) / in_len;
  const double stretch = scale < 1.0 ? 1.0 / scale : 1.0;  // antialias when shrinking
  const double support = 2.0 * stretch;

  std::vector<Taps> table(static_cast<std::size_t>(out_len));
  for (int o = 0; o < out_len; ++o) {
    const double center = (o + 0.5) / scale - 0.5;
    const int first = static_cast<int>(std::floor(center - support)) + 1;
    const int last = static_cast<int>(std::ceil(center + support)) - 1;
    Taps& t = table[static_cast<std::size_t>(o)];
    double sum = 0.0;
    for (int i = first; i <= last; ++i) {
      const double w = keys_kernel((center - i) / stretch);
      if (w == 0.0) continue;
      t.index.push_back(std::clamp(i, 0, in_len - 1));
      t.weight.push_back(w);
      sum += w;
    }
    for (double& w : t.weight) w /= sum;
  }
  return table;
}

// Anchoring on the first tap makes constant inputs reproduce exactly.
double apply(const Taps& t, const double* src, std::size_t stride) {
  const double anchor = src[static_cast<std::size_t>(t.index.front()) * stride];
  double acc = 0.0;
  for (std::size_t k = 0; k < t.index.size(); ++k) {
    acc += t.weight[k] * (src[static_cast<std::size_t>(t.index[k]) * stride] - anchor);
  }
  return anchor + acc;
}

}  // namespace

std::vector<double> bicubic_resize_raw(std::span<const double> src, int width, int height,
                                       int out_width, int out_height) {
  const auto htaps = axis_taps(width, out_width);
  const auto vtaps = axis_taps(height, out_height);

  std::vector<double> tmp(static_cast<std::size_t>(out_width) * height);
  for (int y = 0; y < height; ++y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < out_width; ++x) {
      tmp[static_cast<std::size_t>(y) * out_width + x] = apply(htaps[static_cast<std::size_t>(x)], row, 1);
    }
  }

  std::vector<double> out(static_cast<std::size_t>(out_width) * out_height);
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      out[static_cast<std::size_t>(y) * out_width + x] =
          apply(vtaps[static_cast<std::size_t>(y)], tmp.data() + x, static_cast<std::size_t>(out_width));
    }
  }
  return out;
}

}  // namespace detail
}  // namespace depthsr
