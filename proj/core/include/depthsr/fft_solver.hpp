#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "depthsr/image.hpp"

namespace depthsr {

/// Precomputed transfer functions of the periodic forward differences
///   (Dx u)(x, y) = u(x+1, y) - u(x, y),  (Dy u)(x, y) = u(x, y+1) - u(x, y)
/// on a width x height torus, together with FFT plans for that size.
///
/// Spectra are stored in the real-to-complex half layout: `spectrum_width()`
/// = width/2 + 1 columns by `height` rows, row-major. The cache is immutable
/// after construction and may be shared by concurrent solves.
class OtfCache {
 public:
  OtfCache(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int spectrum_width() const noexcept { return width_ / 2 + 1; }

  std::complex<double> otf_dx(int kx, int ky) const noexcept { return otf_dx_[bin(kx, ky)]; }
  std::complex<double> otf_dy(int kx, int ky) const noexcept { return otf_dy_[bin(kx, ky)]; }
  /// |otf_dx|^2 + |otf_dy|^2
  double denom_base(int kx, int ky) const noexcept { return denom_base_[bin(kx, ky)]; }

  std::span<const std::complex<double>> otf_dx() const noexcept { return otf_dx_; }
  std::span<const std::complex<double>> otf_dy() const noexcept { return otf_dy_; }
  std::span<const double> denom_base() const noexcept { return denom_base_; }

  /// Unnormalized forward DFT of a real width x height field (half spectrum).
  std::vector<std::complex<double>> forward(std::span<const double> field) const;
  /// Inverse of `forward`, including the 1/(width*height) normalization.
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum) const;

 private:
  std::size_t bin(int kx, int ky) const noexcept {
    return static_cast<std::size_t>(ky) * static_cast<std::size_t>(spectrum_width()) + static_cast<std::size_t>(kx);
  }

  struct Plans;
  int width_;
  int height_;
  std::shared_ptr<const Plans> plans_;
  std::vector<std::complex<double>> otf_dx_;
  std::vector<std::complex<double>> otf_dy_;
  std::vector<double> denom_base_;
};

/// Builds the cache for a width x height grid; both must be >= 2.
inline OtfCache build_otf(int width, int height) { return OtfCache(width, height); }

/// Exact minimizer under periodic boundaries of
///   |u - d_up|^2 + rho |u - z|^2 + beta (|Dx u - h|^2 + |Dy u - v|^2)
/// via the diagonalized normal equations
///   F(u) = F(d_up + rho z + beta (Dx^T h + Dy^T v)) / (1 + rho + beta |F(D)|^2).
DepthImage solve_u(const DepthImage& d_up, const DepthImage& z, const Plane& h, const Plane& v, double rho,
                   double beta, const OtfCache& cache);

}  // namespace depthsr
