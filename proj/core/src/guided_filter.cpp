#include "depthsr/guided_filter.hpp"

#include <algorithm>
#include <string>

namespace depthsr {

void GuidedFilterParams::validate() const {
  if (radius < 1) throw std::invalid_argument("guided filter radius must be >= 1, got " + std::to_string(radius));
  if (!(epsilon > 0.0)) throw std::invalid_argument("guided filter epsilon must be > 0");
}

namespace detail {

void box_mean(std::span<const double> src, int width, int height, int radius, std::span<double> dst) {
  if (width == 0 || height == 0) return;
  if (radius == 0) {
    std::copy(src.begin(), src.end(), dst.begin());
    return;
  }
  const std::size_t w = static_cast<std::size_t>(width);
  std::vector<double> prefix(w + 1);
  std::vector<double> horiz(src.size());

  // Horizontal window sums via per-row prefix sums.
  for (int y = 0; y < height; ++y) {
    const double* row = src.data() + y * w;
    prefix[0] = 0.0;
    for (std::size_t x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + row[x];
    double* out = horiz.data() + y * w;
    for (int x = 0; x < width; ++x) {
      const int lo = std::max(0, x - radius);
      const int hi = std::min(width - 1, x + radius);
      out[x] = prefix[static_cast<std::size_t>(hi) + 1] - prefix[static_cast<std::size_t>(lo)];
    }
  }

  // Vertical sums over the horizontal sums, then normalize by clipped area.
  std::vector<double> colsum((static_cast<std::size_t>(height) + 1) * w, 0.0);
  for (int y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      colsum[(y + 1) * w + x] = colsum[y * w + x] + horiz[y * w + x];
    }
  }
  for (int y = 0; y < height; ++y) {
    const int lo_y = std::max(0, y - radius);
    const int hi_y = std::min(height - 1, y + radius);
    const double rows = hi_y - lo_y + 1;
    for (int x = 0; x < width; ++x) {
      const int cols = std::min(width - 1, x + radius) - std::max(0, x - radius) + 1;
      const double sum = colsum[(hi_y + 1) * w + x] - colsum[lo_y * w + x];
      dst[y * w + x] = sum / (rows * cols);
    }
  }
}

}  // namespace detail

GuidedFilter::GuidedFilter(GuideImage guide, GuidedFilterParams params)
    : guide_(std::move(guide)), params_(params) {
  params_.validate();
  const std::size_t n = guide_.size();
  const int w = guide_.width();
  const int h = guide_.height();
  const int r = params_.radius;

  mean_guide_.resize(n);
  detail::box_mean(guide_.pixels(), w, h, r, mean_guide_);

  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = guide_.pixels()[i] * guide_.pixels()[i];
  std::vector<double> mean_sq(n);
  detail::box_mean(sq, w, h, r, mean_sq);

  inv_var_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double var = std::max(0.0, mean_sq[i] - mean_guide_[i] * mean_guide_[i]);
    inv_var_[i] = 1.0 / (var + params_.epsilon);
  }
}

void GuidedFilter::apply_raw(std::span<const double> input, std::span<double> output) const {
  const std::size_t n = input.size();
  if (n == 0) return;
  const int w = guide_.width();
  const int h = guide_.height();
  const int r = params_.radius;
  const auto guide = guide_.pixels();

  // Filtering p - p[0] and adding p[0] back is equivalent (the filter is
  // affine in p); constant inputs then reproduce bit-exactly.
  const double ref = input[0];
  std::vector<double> shifted(n), prod(n);
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] = input[i] - ref;
    prod[i] = guide[i] * shifted[i];
  }

  std::vector<double> mean_p(n), mean_ip(n);
  detail::box_mean(shifted, w, h, r, mean_p);
  detail::box_mean(prod, w, h, r, mean_ip);

  std::vector<double>& a = shifted;  // reuse
  std::vector<double>& b = prod;
  for (std::size_t i = 0; i < n; ++i) {
    const double cov = mean_ip[i] - mean_guide_[i] * mean_p[i];
    a[i] = cov * inv_var_[i];
    b[i] = mean_p[i] - a[i] * mean_guide_[i];
  }

  detail::box_mean(a, w, h, r, mean_p);
  detail::box_mean(b, w, h, r, mean_ip);
  for (std::size_t i = 0; i < n; ++i) output[i] = mean_p[i] * guide[i] + mean_ip[i] + ref;
}

DepthImage guided_filter(const DepthImage& p, const GuideImage& guide, const GuidedFilterParams& params) {
  require_same_shape(p, guide, "guided_filter");
  return GuidedFilter(guide, params).apply(p);
}

}  // namespace depthsr
