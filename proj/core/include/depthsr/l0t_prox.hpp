#pragma once

#include <span>

#include "depthsr/image.hpp"

namespace depthsr {

/// Weights of the reduced-penalty gradient measure:
/// H(p) = 0 at p = 0, t for 0 < |p| <= 1, 1 for |p| > 1; alpha scales H.
struct PenaltyParams {
  double t = 0.75;
  double alpha = 1.0;

  /// Throws std::invalid_argument unless 0 < t < 1 and alpha > 0.
  void validate() const;
};

/// Where the scalar minimizer of (x - p)^2 + alpha * H(p) changes form.
///
/// alpha_low/alpha_high are the roots of t^2 a^2 + (2t - 4) a + 1 = 0. Between
/// them the unit branch p = sgn(x) is reachable from both sides; above
/// alpha_high it is never optimal, and below alpha_low zero is never optimal
/// for |x| >= 1. The four thresholds are compared against |x|.
struct RegimeBoundaries {
  double alpha_low = 0.0;
  double alpha_high = 0.0;
  double thr_zero = 0.0;   // (1 + alpha t) / 2
  double thr_one = 0.0;    // 1 + sqrt(alpha (1 - t))
  double thr_sqrt = 0.0;   // sqrt(alpha)
  double thr_small = 0.0;  // sqrt(alpha t)

  static RegimeBoundaries compute(const PenaltyParams& params);
};

enum class Regime { Low, Middle, High };

/// Boundaries themselves (alpha == alpha_low or alpha_high) count as Middle.
Regime classify(const RegimeBoundaries& b, double alpha) noexcept;

double penalty_h(double p, double t) noexcept;

/// Per-element energy (x - p)^2 + alpha * H(p).
double prox_energy(double x, double p, const PenaltyParams& params) noexcept;

/// Sum of penalty_h over the values.
double l0t_measure(std::span<const double> values, double t) noexcept;

/// Closed-form argmin over p of (x - p)^2 + alpha * H(p). The result is always
/// one of {0, sgn(x), x}; ties resolve to the smaller |p|.
double prox_l0t(double x, const PenaltyParams& params);

/// Element-wise prox_l0t over a field. Parameters are validated once.
void prox_field(std::span<const double> in, std::span<double> out, const PenaltyParams& params);
Plane prox_field(const Plane& field, const PenaltyParams& params);

/// Plain l0 shrinkage: 0 if x^2 <= alpha, else x.
double hard_threshold(double x, double alpha) noexcept;
void hard_threshold_field(std::span<const double> in, std::span<double> out, double alpha);

/// Number of non-zero elements.
double l0_measure(std::span<const double> values) noexcept;

}  // namespace depthsr
