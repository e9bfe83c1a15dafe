#include "depthsr/l0t_prox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace depthsr {

void PenaltyParams::validate() const {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("penalty t must lie in (0, 1), got " + std::to_string(t));
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("penalty alpha must be finite and > 0, got " + std::to_string(alpha));
  }
}

RegimeBoundaries RegimeBoundaries::compute(const PenaltyParams& params) {
  params.validate();
  const double t = params.t;
  const double a = params.alpha;
  const double root = 2.0 * std::sqrt(1.0 - t);
  RegimeBoundaries b;
  b.alpha_low = (2.0 - t - root) / (t * t);
  b.alpha_high = (2.0 - t + root) / (t * t);
  b.thr_zero = 0.5 * (1.0 + a * t);
  b.thr_one = 1.0 + std::sqrt(a * (1.0 - t));
  b.thr_sqrt = std::sqrt(a);
  b.thr_small = std::sqrt(a * t);
  return b;
}

Regime classify(const RegimeBoundaries& b, double alpha) noexcept {
  if (alpha > b.alpha_high) return Regime::High;
  if (alpha < b.alpha_low) return Regime::Low;
  return Regime::Middle;
}

double penalty_h(double p, double t) noexcept {
  const double ap = std::abs(p);
  if (ap == 0.0) return 0.0;
  return ap <= 1.0 ? t : 1.0;
}

double prox_energy(double x, double p, const PenaltyParams& params) noexcept {
  const double d = x - p;
  return d * d + params.alpha * penalty_h(p, params.t);
}

double l0t_measure(std::span<const double> values, double t) noexcept {
  double sum = 0.0;
  for (double v : values) sum += penalty_h(v, t);
  return sum;
}

namespace {

class L0tShrinker {
 public:
  explicit L0tShrinker(const PenaltyParams& params)
      : b_(RegimeBoundaries::compute(params)), regime_(classify(b_, params.alpha)) {}

  double operator()(double x) const noexcept {
    const double ax = std::abs(x);
    if (ax < 1.0) return ax <= b_.thr_small ? 0.0 : x;

    const double unit = x > 0.0 ? 1.0 : -1.0;
    switch (regime_) {
      case Regime::High:
        return ax <= b_.thr_sqrt ? 0.0 : x;
      case Regime::Middle:
        if (ax <= b_.thr_zero) return 0.0;
        return ax <= b_.thr_one ? unit : x;
      case Regime::Low:
        return ax <= b_.thr_one ? unit : x;
    }
    return x;
  }

 private:
  RegimeBoundaries b_;
  Regime regime_;
};

}  // namespace

double prox_l0t(double x, const PenaltyParams& params) { return L0tShrinker(params)(x); }

void prox_field(std::span<const double> in, std::span<double> out, const PenaltyParams& params) {
  if (in.size() != out.size()) throw DimensionMismatch("prox_field: input/output length differ");
  const L0tShrinker shrink(params);
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = shrink(in[i]);
}

Plane prox_field(const Plane& field, const PenaltyParams& params) {
  Plane out(field.width(), field.height());
  prox_field(field.pixels(), out.pixels(), params);
  return out;
}

double hard_threshold(double x, double alpha) noexcept { return x * x <= alpha ? 0.0 : x; }

void hard_threshold_field(std::span<const double> in, std::span<double> out, double alpha) {
  if (in.size() != out.size()) throw DimensionMismatch("hard_threshold_field: input/output length differ");
  if (!(alpha >= 0.0)) throw std::invalid_argument("hard threshold weight must be >= 0");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = hard_threshold(in[i], alpha);
}

double l0_measure(std::span<const double> values) noexcept {
  double count = 0.0;
  for (double v : values) count += v != 0.0 ? 1.0 : 0.0;
  return count;
}

}  // namespace depthsr
