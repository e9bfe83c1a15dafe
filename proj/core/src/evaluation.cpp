#include "depthsr/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "depthsr/image_io.hpp"
#include "depthsr/resample.hpp"
#include "depthsr/simulate.hpp"

namespace depthsr {

double rmse(const DepthImage& pred, const DepthImage& gt, const ValidMask* mask) {
  require_same_shape(pred, gt, "rmse prediction vs ground truth");
  if (mask) require_same_shape(*mask, gt, "rmse mask vs ground truth");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (mask && mask->pixels()[i] == 0.0) continue;
    const double d = pred.pixels()[i] - gt.pixels()[i];
    sum += d * d;
    ++n;
  }
  if (n == 0) throw std::invalid_argument("rmse: no valid pixels");
  return std::sqrt(sum / static_cast<double>(n));
}

namespace {

void add_sample(DirectionStats& s, double a, double b) {
  const auto mag = static_cast<std::size_t>(std::llabs(std::llround(b) - std::llround(a)));
  if (s.histogram.size() <= mag) s.histogram.resize(mag + 1, 0);
  ++s.histogram[mag];
  ++s.count;
}

void finalize(DirectionStats& s) {
  if (s.count == 0) return;
  const double n = static_cast<double>(s.count);
  const std::uint64_t zero = s.histogram.empty() ? 0 : s.histogram[0];
  const std::uint64_t one = s.histogram.size() > 1 ? s.histogram[1] : 0;
  s.fraction_zero = static_cast<double>(zero) / n;
  s.fraction_one = static_cast<double>(one) / n;
  s.fraction_above_one = static_cast<double>(s.count - zero - one) / n;
}

}  // namespace

GradientStats gradient_stats(const DepthImage& depth) {
  return gradient_stats(depth, Rect{0, 0, depth.width(), depth.height()});
}

GradientStats gradient_stats(const DepthImage& depth, Rect r) {
  if (r.x < 0 || r.y < 0 || r.x + r.width > depth.width() || r.y + r.height > depth.height()) {
    throw std::out_of_range("gradient_stats region outside image");
  }
  GradientStats st;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      if (x + 1 < r.x + r.width) add_sample(st.horizontal, depth(x, y), depth(x + 1, y));
      if (y + 1 < r.y + r.height) add_sample(st.vertical, depth(x, y), depth(x, y + 1));
    }
  }
  finalize(st.horizontal);
  finalize(st.vertical);
  return st;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Bicubic: return "bicubic";
    case Method::Ours: return "ours";
    case Method::Gfl0: return "gfl0";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "bicubic") return Method::Bicubic;
  if (name == "ours") return Method::Ours;
  if (name == "gfl0") return Method::Gfl0;
  return std::nullopt;
}

std::string EvalReport::to_csv() const {
  std::string out = "name,factor,method,rmse\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.6f", r.rmse);
    out += r.name + ',' + std::to_string(r.factor) + ',' + to_string(r.method) + ',' + buf + '\n';
  }
  return out;
}

std::string EvalReport::to_markdown() const {
  std::vector<std::pair<std::string, int>> columns;
  std::vector<Method> methods;
  std::map<std::tuple<std::string, int, Method>, double> cell;
  for (const auto& r : records) {
    const std::pair<std::string, int> col{r.name, r.factor};
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    cell[{r.name, r.factor, r.method}] = r.rmse;
  }

  std::ostringstream out;
  out << "| method |";
  for (const auto& [name, f] : columns) out << ' ' << name << " x" << f << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out << "---|";
  out << '\n';
  char buf[32];
  for (Method m : methods) {
    out << "| " << to_string(m) << " |";
    for (const auto& [name, f] : columns) {
      auto it = cell.find({name, f, m});
      if (it == cell.end()) {
        out << " - |";
      } else {
        std::snprintf(buf, sizeof buf, "%.2f", it->second);
        out << ' ' << buf << " |";
      }
    }
    out << '\n';
  }
  return out.str();
}

EvalCase prepare_case(const DepthImage& gt, const GuideImage& guide, int factor, double noise_sigma,
                      std::uint64_t seed) {
  require_same_shape(gt, guide, "ground truth vs guide");
  const int w = gt.width() / factor * factor;
  const int h = gt.height() / factor * factor;
  if (w == 0 || h == 0) throw std::invalid_argument("image smaller than the upsampling factor");
  EvalCase c;
  c.gt = crop(gt, Rect{0, 0, w, h});
  c.guide = crop(guide, Rect{0, 0, w, h});
  c.lr = simulate_lr(c.gt, factor, noise_sigma, seed);
  return c;
}

DepthImage run_method(Method method, const EvalCase& c, int factor, const SolverParams& params) {
  switch (method) {
    case Method::Bicubic:
      return bicubic_resize_to(c.lr, c.gt.width(), c.gt.height());
    case Method::Ours: {
      SolverParams p = params;
      p.prior = GradientPrior::L0t;
      return upsample(c.lr, c.guide, factor, p).depth;
    }
    case Method::Gfl0: {
      SolverParams p = params;
      p.prior = GradientPrior::L0;
      return upsample(c.lr, c.guide, factor, p).depth;
    }
  }
  throw std::invalid_argument("unknown method");
}

void evaluate_scene(const std::string& name, const DepthImage& gt, const GuideImage& guide,
                    const BenchmarkConfig& config, EvalReport& report) {
  for (int factor : config.factors) {
    const EvalCase c = prepare_case(gt, guide, factor, config.noise_sigma, config.seed);
    for (Method m : config.methods) {
      report.records.push_back({name, factor, m, rmse(run_method(m, c, factor, config.params), c.gt)});
    }
  }
}

namespace {

std::optional<std::filesystem::path> first_existing(const std::filesystem::path& dir,
                                                    std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (std::filesystem::is_regular_file(dir / n)) return dir / n;
  }
  return std::nullopt;
}

}  // namespace

EvalReport run_benchmark(const BenchmarkConfig& config) {
  if (!std::filesystem::is_directory(config.dataset_dir)) {
    throw IoError("dataset directory not found: " + config.dataset_dir.string());
  }
  std::vector<std::filesystem::path> entries;
  for (const auto& e : std::filesystem::directory_iterator(config.dataset_dir)) {
    if (e.is_directory()) entries.push_back(e.path());
  }
  std::sort(entries.begin(), entries.end());

  EvalReport report;
  for (const auto& dir : entries) {
    const std::string name = dir.filename().string();
    const auto gt_path = first_existing(dir, {"gt.pfm", "gt.pgm"});
    const auto guide_path = first_existing(dir, {"guide.png", "guide.pgm", "guide.pfm"});
    if (!gt_path || !guide_path) {
      report.errors.push_back(name + ": missing " + std::string(!gt_path ? "ground truth" : "guide"));
      continue;
    }
    try {
      const DepthImage gt = read_depth(*gt_path);
      const GuideImage guide = read_guide(*guide_path);
      evaluate_scene(name, gt, guide, config, report);
    } catch (const std::exception& ex) {
      report.errors.push_back(name + ": " + ex.what());
    }
  }
  return report;
}

}  // namespace depthsr
