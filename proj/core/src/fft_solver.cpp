#include "depthsr/fft_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace depthsr {
namespace {

// Planner calls are not thread-safe in FFTW; execution with new-array
// functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double, FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex, FftwFree>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (!p) throw std::bad_alloc();
  return RealBuffer(p);
}
ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (!p) throw std::bad_alloc();
  return ComplexBuffer(p);
}

}  // namespace

struct OtfCache::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(int width, int height) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    const std::size_t nc = static_cast<std::size_t>(width / 2 + 1) * height;
    RealBuffer real = alloc_real(n);
    ComplexBuffer cplx = alloc_complex(nc);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_2d(height, width, real.get(), cplx.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(height, width, cplx.get(), real.get(), FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("FFTW plan creation failed");
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

OtfCache::OtfCache(int width, int height) : width_(width), height_(height) {
  if (width < 2 || height < 2) throw std::invalid_argument("OtfCache needs width, height >= 2");
  plans_ = std::make_shared<const Plans>(width, height);

  // The forward difference u(x+1) - u(x) is circular convolution with the
  // kernel k(0) = -1, k(width-1) = +1, whose DFT is exp(2 pi i kx / W) - 1.
  const int sw = spectrum_width();
  const std::size_t nc = static_cast<std::size_t>(sw) * height;
  otf_dx_.resize(nc);
  otf_dy_.resize(nc);
  denom_base_.resize(nc);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int ky = 0; ky < height; ++ky) {
    const double wy = two_pi * ky / height;
    const std::complex<double> dy(std::cos(wy) - 1.0, std::sin(wy));
    for (int kx = 0; kx < sw; ++kx) {
      const double wx = two_pi * kx / width;
      const std::complex<double> dx(std::cos(wx) - 1.0, std::sin(wx));
      const std::size_t i = bin(kx, ky);
      otf_dx_[i] = dx;
      otf_dy_[i] = dy;
      denom_base_[i] = std::norm(dx) + std::norm(dy);
    }
  }
}

std::vector<std::complex<double>> OtfCache::forward(std::span<const double> field) const {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  if (field.size() != n) throw DimensionMismatch("OtfCache::forward: field size does not match cache");
  const std::size_t nc = static_cast<std::size_t>(spectrum_width()) * height_;
  RealBuffer in = alloc_real(n);
  ComplexBuffer out = alloc_complex(nc);
  std::copy(field.begin(), field.end(), in.get());
  fftw_execute_dft_r2c(plans_->forward, in.get(), out.get());
  const auto* c = reinterpret_cast<const std::complex<double>*>(out.get());
  return {c, c + nc};
}

std::vector<double> OtfCache::inverse(std::span<const std::complex<double>> spectrum) const {
  const std::size_t nc = static_cast<std::size_t>(spectrum_width()) * height_;
  if (spectrum.size() != nc) throw DimensionMismatch("OtfCache::inverse: spectrum size does not match cache");
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  ComplexBuffer in = alloc_complex(nc);
  RealBuffer out = alloc_real(n);
  std::copy(spectrum.begin(), spectrum.end(), reinterpret_cast<std::complex<double>*>(in.get()));
  fftw_execute_dft_c2r(plans_->backward, in.get(), out.get());
  const double norm = 1.0 / static_cast<double>(n);
  std::vector<double> result(out.get(), out.get() + n);
  for (double& v : result) v *= norm;
  return result;
}

DepthImage solve_u(const DepthImage& d_up, const DepthImage& z, const Plane& h, const Plane& v, double rho,
                   double beta, const OtfCache& cache) {
  require_same_shape(d_up, z, "solve_u d_up vs z");
  require_same_shape(d_up, h, "solve_u d_up vs h");
  require_same_shape(d_up, v, "solve_u d_up vs v");
  if (d_up.width() != cache.width() || d_up.height() != cache.height()) {
    throw DimensionMismatch("solve_u: OTF cache was built for a different size");
  }
  if (!(rho >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("solve_u: rho and beta must be >= 0");

  // Numerator assembled in the spatial domain: conj(F(D)) F(h) is F(D^T h),
  // and D^T is the circular backward difference h(x-1) - h(x).
  const int w = d_up.width();
  const int hgt = d_up.height();
  std::vector<double> rhs(d_up.size());
  for (int y = 0; y < hgt; ++y) {
    const int ym = y == 0 ? hgt - 1 : y - 1;
    for (int x = 0; x < w; ++x) {
      const int xm = x == 0 ? w - 1 : x - 1;
      const double adj = (h(xm, y) - h(x, y)) + (v(x, ym) - v(x, y));
      rhs[static_cast<std::size_t>(y) * w + x] = d_up(x, y) + rho * z(x, y) + beta * adj;
    }
  }

  std::vector<std::complex<double>> spec = cache.forward(rhs);
  const auto denom = cache.denom_base();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] /= 1.0 + rho + beta * denom[i];
  return DepthImage(w, hgt, cache.inverse(spec));
}

}  // namespace depthsr
