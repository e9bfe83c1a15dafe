#pragma once

#include <span>
#include <vector>

#include "depthsr/image.hpp"

namespace depthsr {

struct GuidedFilterParams {
  int radius = 8;
  double epsilon = 1e-4;

  /// Throws std::invalid_argument unless radius >= 1 and epsilon > 0.
  void validate() const;
};

namespace detail {
/// Window mean over the (2r+1)^2 square clipped to the image, normalized by
/// the clipped area. Separable running sums, O(1) per pixel.
void box_mean(std::span<const double> src, int width, int height, int radius, std::span<double> dst);
}

template <typename Tag>
BasicImage<Tag> box_filter(const BasicImage<Tag>& img, int radius) {
  if (radius < 0) throw std::invalid_argument("box_filter radius must be >= 0");
  BasicImage<Tag> out(img.width(), img.height());
  detail::box_mean(img.pixels(), img.width(), img.height(), radius, out.pixels());
  return out;
}

/// Guided filter bound to one guidance image. Guide-only statistics (window
/// mean and regularized inverse variance) are computed once, so repeated
/// filtering against the same guide costs four box passes per call.
class GuidedFilter {
 public:
  GuidedFilter(GuideImage guide, GuidedFilterParams params);

  const GuideImage& guide() const noexcept { return guide_; }
  const GuidedFilterParams& params() const noexcept { return params_; }

  template <typename Tag>
  BasicImage<Tag> apply(const BasicImage<Tag>& input) const {
    require_same_shape(input, guide_, "guided filter input vs guide");
    BasicImage<Tag> out(input.width(), input.height());
    apply_raw(input.pixels(), out.pixels());
    return out;
  }

 private:
  void apply_raw(std::span<const double> input, std::span<double> output) const;

  GuideImage guide_;
  GuidedFilterParams params_;
  std::vector<double> mean_guide_;
  std::vector<double> inv_var_;  // 1 / (var(I) + eps)
};

/// q = mean(a) * I + mean(b) with a = cov(I, p) / (var(I) + eps) and
/// b = mean(p) - a * mean(I) over every clipped window.
DepthImage guided_filter(const DepthImage& p, const GuideImage& guide, const GuidedFilterParams& params);

}  // namespace depthsr
