#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "depthsr/errors.hpp"

namespace depthsr {

struct DepthTag {};
struct GuideTag {};
struct PlaneTag {};

/// Row-major grid of doubles. The tag keeps depth maps, guidance images and
/// scratch planes from being mixed up at call sites; the storage is identical.
template <typename Tag>
class BasicImage {
 public:
  BasicImage() = default;

  BasicImage(int width, int height, double fill = 0.0)
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width_) * height_, fill) {}

  BasicImage(int width, int height, std::vector<double> data)
      : width_(checked_dim(width)), height_(checked_dim(height)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(width_) * height_) {
      throw std::invalid_argument("pixel buffer length " + std::to_string(data_.size()) +
                                  " does not match " + std::to_string(width_) + "x" +
                                  std::to_string(height_));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<double> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::span<double> pixels() noexcept { return data_; }
  std::span<const double> pixels() const noexcept { return data_; }

  std::vector<double>& storage() & noexcept { return data_; }
  const std::vector<double>& storage() const& noexcept { return data_; }
  std::vector<double>&& storage() && noexcept { return std::move(data_); }

  template <typename OtherTag>
  bool same_shape(const BasicImage<OtherTag>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const BasicImage&, const BasicImage&) = default;

 private:
  static int checked_dim(int v) {
    if (v < 0) throw std::invalid_argument("negative image dimension");
    return v;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// Depth or disparity map in native units (disparity levels, mm, ...).
using DepthImage = BasicImage<DepthTag>;
/// Intensity guidance image with values in [0, 1].
using GuideImage = BasicImage<GuideTag>;
/// Untyped scalar plane: gradient components, filter intermediates.
using Plane = BasicImage<PlaneTag>;

/// Reinterpret the pixels of one image kind as another.
template <typename To, typename From>
BasicImage<To> retag(BasicImage<From> img) {
  const int w = img.width();
  const int h = img.height();
  return BasicImage<To>(w, h, std::move(img).storage());
}

template <typename TagA, typename TagB>
void require_same_shape(const BasicImage<TagA>& a, const BasicImage<TagB>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                            std::to_string(b.height()));
  }
}

template <typename Tag>
bool all_finite(const BasicImage<Tag>& img) noexcept {
  return std::all_of(img.pixels().begin(), img.pixels().end(),
                     [](double v) { return std::isfinite(v); });
}

/// Builds a guidance image, clamping every value into [0, 1].
GuideImage make_guide(int width, int height, std::vector<double> data);
GuideImage clamp_guide(GuideImage img);

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

template <typename Tag>
BasicImage<Tag> crop(const BasicImage<Tag>& img, Rect r) {
  if (r.x < 0 || r.y < 0 || r.width < 0 || r.height < 0 || r.x + r.width > img.width() ||
      r.y + r.height > img.height()) {
    throw std::out_of_range("crop rectangle outside image");
  }
  BasicImage<Tag> out(r.width, r.height);
  for (int y = 0; y < r.height; ++y) {
    auto src = img.row(r.y + y).subspan(static_cast<std::size_t>(r.x), static_cast<std::size_t>(r.width));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

/// Edge-replicating pad: `left/top` pixels before, `right/bottom` after.
template <typename Tag>
BasicImage<Tag> pad_replicate(const BasicImage<Tag>& img, int left, int top, int right, int bottom) {
  if (img.empty()) throw std::invalid_argument("cannot pad an empty image");
  const int w = img.width() + left + right;
  const int h = img.height() + top + bottom;
  BasicImage<Tag> out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = std::clamp(y - top, 0, img.height() - 1);
    for (int x = 0; x < w; ++x) {
      const int sx = std::clamp(x - left, 0, img.width() - 1);
      out(x, y) = img(sx, sy);
    }
  }
  return out;
}

template <typename Tag>
std::pair<double, double> min_max(const BasicImage<Tag>& img) {
  if (img.empty()) throw std::invalid_argument("min_max of empty image");
  auto [lo, hi] = std::minmax_element(img.pixels().begin(), img.pixels().end());
  return {*lo, *hi};
}

}  // namespace depthsr
