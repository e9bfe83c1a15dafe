#include "depthsr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "depthsr/evaluation.hpp"
#include "depthsr/fft_solver.hpp"
#include "depthsr/l0t_prox.hpp"
#include "depthsr/resample.hpp"

namespace depthsr {

const char* to_string(GradientPrior prior) {
  switch (prior) {
    case GradientPrior::L0t: return "l0t";
    case GradientPrior::L0: return "l0";
  }
  return "?";
}

void SolverParams::validate() const {
  if (prior == GradientPrior::L0t && !(t > 0.0 && t < 1.0)) throw std::invalid_argument("t must lie in (0, 1)");
  if (!(beta0 > 0.0)) throw std::invalid_argument("beta0 must be > 0");
  if (!(kappa > 1.0)) throw std::invalid_argument("kappa must be > 1");
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (max_iter < 0 || max_iter > 100) throw std::invalid_argument("max_iter must lie in [0, 100]");
  if (pad_width < 0) throw std::invalid_argument("pad width must be >= 0");
  if (!(value_scale > 0.0)) throw std::invalid_argument("value_scale must be > 0");
  gf.validate();
}

Schedule schedule_at(const SolverParams& params, int iteration) {
  Schedule s;
  s.beta = std::pow(params.kappa, iteration) * params.beta0 / 2.0;
  s.lambda = params.gamma / s.beta;
  s.rho = params.rho;
  return s;
}

std::string ConvergenceTrace::to_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "iter,beta,lambda,rho,objective,rmse\n";
  for (const auto& r : records) {
    out << r.iter << ',' << r.beta << ',' << r.lambda << ',' << r.rho << ',' << r.objective << ',';
    if (r.rmse) out << *r.rmse;
    out << '\n';
  }
  return out.str();
}

namespace {

template <typename Tag>
void guard_finite(const BasicImage<Tag>& img, const char* stage, int iter) {
  if (!all_finite(img)) throw NumericalError(stage, "iteration " + std::to_string(iter));
}

void shrink(const GradientField& g, GradientField& out, const SolverParams& params, double lambda) {
  if (params.prior == GradientPrior::L0t) {
    const PenaltyParams pen{params.t, lambda};
    prox_field(g.h.pixels(), out.h.pixels(), pen);
    prox_field(g.v.pixels(), out.v.pixels(), pen);
  } else {
    hard_threshold_field(g.h.pixels(), out.h.pixels(), lambda);
    hard_threshold_field(g.v.pixels(), out.v.pixels(), lambda);
  }
}

DepthImage scaled(const DepthImage& img, double s) {
  DepthImage out = img;
  if (s != 1.0) {
    for (double& v : out.pixels()) v *= s;
  }
  return out;
}

}  // namespace

double objective(const DepthImage& u, const DepthImage& d_up, const GuidedFilter& filter, double t, double rho,
                 double lambda, GradientPrior prior) {
  require_same_shape(u, d_up, "objective u vs d_up");
  const DepthImage z = filter.apply(u);
  double fidelity = 0.0;
  double coupling = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u.pixels()[i] - d_up.pixels()[i];
    const double b = u.pixels()[i] - z.pixels()[i];
    fidelity += a * a;
    coupling += b * b;
  }
  const GradientField g = gradient(u);
  const double reg = prior == GradientPrior::L0t ? l0t_measure(g.h.pixels(), t) + l0t_measure(g.v.pixels(), t)
                                                 : l0_measure(g.h.pixels()) + l0_measure(g.v.pixels());
  return fidelity + rho * coupling + lambda * reg;
}

UpsampleResult upsample(const DepthImage& lr, const GuideImage& guide, int factor, const SolverParams& params,
                        const std::optional<DepthImage>& gt) {
  params.validate();
  if (factor < 2) throw std::invalid_argument("upsample factor must be >= 2");
  if (lr.empty()) throw std::invalid_argument("empty low-resolution input");
  if (guide.width() != lr.width() * factor || guide.height() != lr.height() * factor) {
    throw DimensionMismatch("guide must be " + std::to_string(lr.width() * factor) + "x" +
                            std::to_string(lr.height() * factor) + ", got " + std::to_string(guide.width()) +
                            "x" + std::to_string(guide.height()));
  }
  if (gt) require_same_shape(*gt, guide, "ground truth vs guide");
  guard_finite(lr, "input", 0);

  const DepthImage d_up_native = bicubic_resize_to(lr, guide.width(), guide.height());
  guard_finite(d_up_native, "bicubic", 0);

  UpsampleResult result;
  if (params.max_iter == 0) {
    result.depth = d_up_native;
    return result;
  }

  const auto [lr_min, lr_max] = min_max(lr);
  const double max_abs = std::max(std::abs(lr_min), std::abs(lr_max));
  const double to_work = max_abs > params.value_scale ? params.value_scale / max_abs : 1.0;

  const int pad = params.pad ? params.pad_width : 0;
  const DepthImage d_up = pad_replicate(scaled(d_up_native, to_work), pad, pad, pad, pad);
  const GuidedFilter filter(pad_replicate(guide, pad, pad, pad, pad), params.gf);
  const OtfCache cache(d_up.width(), d_up.height());
  const Rect interior{pad, pad, guide.width(), guide.height()};

  DepthImage u = d_up;
  GradientField hv{Plane(u.width(), u.height()), Plane(u.width(), u.height())};
  shrink(gradient(u), hv, params, schedule_at(params, 0).lambda);

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    const Schedule s = schedule_at(params, iter);

    const DepthImage z = filter.apply(u);
    guard_finite(z, "guided_filter", iter);

    u = solve_u(d_up, z, hv.h, hv.v, s.rho, s.beta, cache);
    guard_finite(u, "solve_u", iter);

    shrink(gradient(u), hv, params, s.lambda);
    guard_finite(hv.h, "shrink", iter);
    guard_finite(hv.v, "shrink", iter);

    TraceRecord rec{iter, s.beta, s.lambda, s.rho, 0.0, std::nullopt};
    rec.objective = objective(u, d_up, filter, params.t, s.rho, s.lambda, params.prior);
    if (gt) rec.rmse = rmse(scaled(crop(u, interior), 1.0 / to_work), *gt);
    result.trace.records.push_back(rec);
  }

  DepthImage out = scaled(crop(u, interior), 1.0 / to_work);
  if (params.clamp_output) {
    for (double& v : out.pixels()) v = std::clamp(v, lr_min, lr_max);
    result.trace.output_clamped = true;
    result.trace.clamp_low = lr_min;
    result.trace.clamp_high = lr_max;
  }
  result.depth = std::move(out);
  return result;
}

}  // namespace depthsr
