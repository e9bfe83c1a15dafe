#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "depthsr/image.hpp"
#include "depthsr/pipeline.hpp"

namespace depthsr {

struct MaskTag {};
/// Non-zero entries mark valid ground-truth pixels.
using ValidMask = BasicImage<MaskTag>;

/// sqrt(mean((pred - gt)^2)) over valid pixels. Throws DimensionMismatch on
/// size disagreement and std::invalid_argument if the mask selects nothing.
double rmse(const DepthImage& pred, const DepthImage& gt, const ValidMask* mask = nullptr);

/// Histograms of |forward difference| on the rounded integer depth grid.
/// Differences that would wrap around the image (or leave the region) are
/// not counted.
struct DirectionStats {
  std::vector<std::uint64_t> histogram;  // histogram[k] = count of magnitude k
  std::uint64_t count = 0;
  double fraction_zero = 0.0;
  double fraction_one = 0.0;
  double fraction_above_one = 0.0;
};

struct GradientStats {
  DirectionStats horizontal;
  DirectionStats vertical;
};

GradientStats gradient_stats(const DepthImage& depth);
GradientStats gradient_stats(const DepthImage& depth, Rect region);

enum class Method { Bicubic, Ours, Gfl0 };

const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct EvalRecord {
  std::string name;
  int factor = 0;
  Method method = Method::Bicubic;
  double rmse = 0.0;
};

struct EvalReport {
  std::vector<EvalRecord> records;
  /// Entries that could not be evaluated: "<name>: <reason>".
  std::vector<std::string> errors;

  /// `name,factor,method,rmse` with fixed 6-decimal RMSE.
  std::string to_csv() const;
  /// One row per method, one column per (image, factor).
  std::string to_markdown() const;
};

struct BenchmarkConfig {
  std::filesystem::path dataset_dir;
  std::vector<int> factors{2, 4};
  std::vector<Method> methods{Method::Bicubic, Method::Ours, Method::Gfl0};
  SolverParams params{};
  double noise_sigma = 2.0;
  std::uint64_t seed = 7;
};

/// One evaluated (scene, factor) pair: ground truth and guide cropped to a
/// multiple of the factor, then the simulated low-resolution input.
struct EvalCase {
  DepthImage gt;
  GuideImage guide;
  DepthImage lr;
};

EvalCase prepare_case(const DepthImage& gt, const GuideImage& guide, int factor, double noise_sigma,
                      std::uint64_t seed);

/// Runs `method` on a prepared case and returns the high-resolution estimate.
DepthImage run_method(Method method, const EvalCase& c, int factor, const SolverParams& params);

/// Evaluates one in-memory scene for every factor and method.
void evaluate_scene(const std::string& name, const DepthImage& gt, const GuideImage& guide,
                    const BenchmarkConfig& config, EvalReport& report);

/// Walks `dataset_dir/<name>/` in lexicographic order. Each entry needs a
/// ground truth (`gt.pfm` or `gt.pgm`) and a guide (`guide.png`, `guide.pgm`
/// or `guide.pfm`); incomplete entries are reported and skipped.
EvalReport run_benchmark(const BenchmarkConfig& config);

}  // namespace depthsr
