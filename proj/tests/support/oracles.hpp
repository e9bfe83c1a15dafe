#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "depthsr/image.hpp"

namespace depthsr::testing {

/// Reduced-penalty energy written out from its definition.
double reference_energy(double x, double p, double t, double alpha);

struct GridMinimum {
  double argmin = 0.0;
  double energy = 0.0;
};

/// Dense scan of p over [-|x| - 2, |x| + 2] with the given step, plus the
/// candidates {0, -1, 1, x}. Ties go to the smaller |p|.
GridMinimum grid_prox(double x, double t, double alpha, double step = 1e-4);

/// Thresholds recomputed independently of the library.
struct ReferenceThresholds {
  double alpha_low, alpha_high, zero, one, sqrt_alpha, small;
};
ReferenceThresholds reference_thresholds(double t, double alpha);

/// Guided filter by explicit per-window regression over clipped windows.
DepthImage naive_guided_filter(const DepthImage& p, const GuideImage& guide, int radius, double eps);

/// Mean over the clipped (2r+1)^2 window at (x, y), by direct summation.
double naive_window_mean(const DepthImage& img, int x, int y, int radius);

/// Dense solve of (I + rho I + beta (Dx'Dx + Dy'Dy)) u = d + rho z + beta (Dx'h + Dy'v)
/// with periodic forward differences.
DepthImage dense_periodic_solve(const DepthImage& d, const DepthImage& z, const Plane& h, const Plane& v,
                                double rho, double beta);

/// Largest |Im| after a naive complex inverse DFT of the diagonal solve.
/// Also returns the real part for comparison.
struct NaiveSpectralSolve {
  DepthImage real_part;
  double max_imag = 0.0;
};
NaiveSpectralSolve naive_spectral_solve(const DepthImage& d, const DepthImage& z, const Plane& h,
                                        const Plane& v, double rho, double beta);

template <typename Tag>
BasicImage<Tag> random_image(int w, int h, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  BasicImage<Tag> img(w, h);
  for (double& v : img.pixels()) v = dist(rng);
  return img;
}

}  // namespace depthsr::testing
