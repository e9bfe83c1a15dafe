#pragma once

#include <optional>
#include <string>
#include <vector>

#include "depthsr/guided_filter.hpp"
#include "depthsr/image.hpp"

namespace depthsr {

/// Gradient prior used by the shrinkage step.
enum class GradientPrior {
  L0t,  // reduced penalty t for 0 < |g| <= 1 (closed-form prox_l0t)
  L0,   // plain non-zero count (hard threshold); the GFL0 baseline
};

const char* to_string(GradientPrior prior);

struct SolverParams {
  double t = 0.75;
  double beta0 = 0.0025;
  double kappa = 2.0;
  /// Guided-filter coupling weight, held fixed across iterations.
  double rho = 3.0;
  /// Shrinkage gain: lambda = gamma / beta at every iteration.
  double gamma = 20.0;
  int max_iter = 30;
  GuidedFilterParams gf{};
  bool pad = true;
  int pad_width = 16;
  /// Working depth range. Inputs whose largest magnitude exceeds this are
  /// scaled into [-value_scale, value_scale] while solving and scaled back.
  double value_scale = 255.0;
  GradientPrior prior = GradientPrior::L0t;
  /// Clamp the final result to [min(lr), max(lr)].
  bool clamp_output = true;

  void validate() const;
};

/// Coupled continuation weights at one iteration.
struct Schedule {
  double beta = 0.0;
  double lambda = 0.0;  // shrinkage weight (alpha of the scalar prox)
  double rho = 0.0;     // guided-filter coupling
};

/// Iteration 0 is the initialization (beta = beta0 / 2); iteration p >= 1 has
/// beta = kappa^p * beta0 / 2, lambda = gamma / beta and rho = params.rho.
Schedule schedule_at(const SolverParams& params, int iteration);

struct GradientField {
  Plane h;  // horizontal: u(x+1, y) - u(x, y), wrapping at the last column
  Plane v;  // vertical:   u(x, y+1) - u(x, y), wrapping at the last row
};

/// Circular forward differences, the same operator the FFT solver inverts.
template <typename Tag>
GradientField gradient(const BasicImage<Tag>& u) {
  const int w = u.width();
  const int h = u.height();
  GradientField g{Plane(w, h), Plane(w, h)};
  for (int y = 0; y < h; ++y) {
    const int yp = y + 1 == h ? 0 : y + 1;
    for (int x = 0; x < w; ++x) {
      const int xp = x + 1 == w ? 0 : x + 1;
      g.h(x, y) = u(xp, y) - u(x, y);
      g.v(x, y) = u(x, yp) - u(x, y);
    }
  }
  return g;
}

struct TraceRecord {
  int iter = 0;
  double beta = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  double objective = 0.0;
  std::optional<double> rmse;
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;
  /// Stage order executed inside every iteration.
  std::string stage_order = "schedule,guided_filter,solve_u,shrink";
  bool output_clamped = false;
  double clamp_low = 0.0;
  double clamp_high = 0.0;

  /// CSV with header `iter,beta,lambda,rho,objective,rmse`.
  std::string to_csv() const;
};

struct UpsampleResult {
  DepthImage depth;
  ConvergenceTrace trace;
};

/// Guided upsampling with gradient shrinkage. Per iteration p: update the
/// schedule, z = GF(u, guide), u = argmin of the quadratic subproblem using z
/// and the previous (h, v), then (h, v) = shrink(grad u). Throws
/// DimensionMismatch on size disagreement and NumericalError (naming the
/// stage) if a NaN/Inf appears.
UpsampleResult upsample(const DepthImage& lr, const GuideImage& guide, int factor, const SolverParams& params,
                        const std::optional<DepthImage>& gt = std::nullopt);

/// |u - d_up|^2 + rho |u - GF(u)|^2 + lambda * (measure(u_x) + measure(u_y)),
/// where measure is the l0^t measure (or the l0 count for GradientPrior::L0).
/// Diagnostic only.
double objective(const DepthImage& u, const DepthImage& d_up, const GuidedFilter& filter, double t,
                 double rho, double lambda, GradientPrior prior = GradientPrior::L0t);

}  // namespace depthsr
