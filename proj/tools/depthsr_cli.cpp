// depthsr command-line front end.
//
// Exit codes: 0 success, 2 input/parse error, 3 numerical abort.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "depthsr/evaluation.hpp"
#include "depthsr/image_io.hpp"
#include "depthsr/pipeline.hpp"
#include "depthsr/simulate.hpp"
#include "depthsr/synthetic.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void add_solver_flags(CLI::App& cmd, depthsr::SolverParams& p) {
  cmd.add_option("--t", p.t, "Reduced penalty for gradients with 0 < |g| <= 1")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--beta0", p.beta0, "Initial coupling weight")->capture_default_str();
  cmd.add_option("--kappa", p.kappa, "Coupling growth factor per iteration")->capture_default_str();
  cmd.add_option("--rho", p.rho, "Guided-filter coupling weight")->capture_default_str();
  cmd.add_option("--gamma", p.gamma, "Shrinkage gain (lambda = gamma / beta)")->capture_default_str();
  cmd.add_option("--iters", p.max_iter, "Number of iterations")->capture_default_str()->check(CLI::Range(0, 100));
  cmd.add_option("--gf-radius", p.gf.radius, "Guided filter window radius")->capture_default_str();
  cmd.add_option("--gf-eps", p.gf.epsilon, "Guided filter regularizer")->capture_default_str();
  cmd.add_flag("--pad,!--no-pad", p.pad, "Edge-pad by 16 px before the periodic solve")->capture_default_str();
  cmd.add_option("--value-scale", p.value_scale, "Inputs deeper than this are rescaled while solving")
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw depthsr::IoError("cannot write " + path);
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided depth-map upsampling with low-gradient regularization"};
  app.require_subcommand(1);

  // upscale
  auto* upscale = app.add_subcommand("upscale", "Upsample a low-resolution depth map");
  std::string lr_path, guide_path, out_path, gt_path, trace_path;
  int factor = 4;
  depthsr::SolverParams solver;
  upscale->add_option("--lr", lr_path, "Low-resolution depth (PGM/PFM)")->required();
  upscale->add_option("--guide", guide_path, "High-resolution guide (PGM/PFM/PNG)")->required();
  upscale->add_option("--factor", factor, "Upsampling factor")->required()->check(CLI::IsMember({2, 4, 8}));
  upscale->add_option("--gt", gt_path, "Ground truth for per-iteration RMSE");
  upscale->add_option("--out", out_path, "Output depth (format from extension)")->required();
  upscale->add_option("--trace", trace_path, "Write the convergence trace CSV here");
  add_solver_flags(*upscale, solver);

  // eval
  auto* eval = app.add_subcommand("eval", "RMSE between a prediction and ground truth");
  std::string pred_path, eval_gt_path;
  eval->add_option("--pred", pred_path)->required();
  eval->add_option("--gt", eval_gt_path)->required();

  // stats
  auto* stats = app.add_subcommand("stats", "Gradient magnitude histogram of a depth map");
  std::string stats_path;
  bool stats_csv = false;
  stats->add_option("--depth", stats_path)->required();
  stats->add_flag("--csv", stats_csv, "Emit the full histogram as CSV");

  // bench
  auto* bench = app.add_subcommand("bench", "Simulate, upsample and score a dataset directory");
  std::string dataset, factors_arg = "2,4", methods_arg = "bicubic,ours,gfl0", report_path, markdown_path;
  std::uint64_t seed = 7;
  double sigma = 2.0;
  bench->add_option("--dataset", dataset, "Directory of <name>/gt.pfm + <name>/guide.png")->required();
  bench->add_option("--factors", factors_arg)->capture_default_str();
  bench->add_option("--methods", methods_arg)->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_option("--sigma", sigma, "Noise deviation at the maximum depth")->capture_default_str();
  bench->add_option("--out", report_path, "CSV report path")->required();
  bench->add_option("--markdown", markdown_path, "Optional Markdown table path");
  depthsr::SolverParams bench_solver;
  add_solver_flags(*bench, bench_solver);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Produce a noisy low-resolution depth map");
  std::string sim_in, sim_out;
  int sim_factor = 4;
  double sim_sigma = 2.0;
  std::uint64_t sim_seed = 7;
  simulate->add_option("--hr", sim_in)->required();
  simulate->add_option("--out", sim_out)->required();
  simulate->add_option("--factor", sim_factor)->capture_default_str()->check(CLI::Range(2, 64));
  simulate->add_option("--sigma", sim_sigma)->capture_default_str();
  simulate->add_option("--seed", sim_seed)->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Write the built-in synthetic step scene");
  std::string synth_dir;
  synth->add_option("--out-dir", synth_dir, "Receives gt.pfm and guide.pgm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (*upscale) {
      const auto lr = depthsr::read_depth(lr_path);
      const auto guide = depthsr::read_guide(guide_path);
      std::optional<depthsr::DepthImage> gt;
      if (!gt_path.empty()) gt = depthsr::read_depth(gt_path);
      const auto result = depthsr::upsample(lr, guide, factor, solver, gt);
      depthsr::write_depth(result.depth, out_path);
      if (!trace_path.empty()) write_text(trace_path, result.trace.to_csv());
      if (!result.trace.records.empty() && result.trace.records.back().rmse) {
        std::printf("rmse %.6f\n", *result.trace.records.back().rmse);
      }
    } else if (*eval) {
      const auto pred = depthsr::read_depth(pred_path);
      const auto gt = depthsr::read_depth(eval_gt_path);
      std::printf("%.6f\n", depthsr::rmse(pred, gt));
    } else if (*stats) {
      const auto st = depthsr::gradient_stats(depthsr::read_depth(stats_path));
      if (stats_csv) {
        std::printf("magnitude,horizontal,vertical\n");
        const std::size_t n = std::max(st.horizontal.histogram.size(), st.vertical.histogram.size());
        for (std::size_t k = 0; k < n; ++k) {
          const auto at = [k](const depthsr::DirectionStats& d) {
            return k < d.histogram.size() ? d.histogram[k] : std::uint64_t{0};
          };
          std::printf("%zu,%llu,%llu\n", k, static_cast<unsigned long long>(at(st.horizontal)),
                      static_cast<unsigned long long>(at(st.vertical)));
        }
      } else {
        for (const auto& [label, d] : {std::pair{"horizontal", &st.horizontal}, std::pair{"vertical", &st.vertical}}) {
          std::printf("%s: zero %.4f  one %.4f  above-one %.4f  (n=%llu)\n", label, d->fraction_zero,
                      d->fraction_one, d->fraction_above_one, static_cast<unsigned long long>(d->count));
        }
      }
    } else if (*bench) {
      depthsr::BenchmarkConfig cfg;
      cfg.dataset_dir = dataset;
      cfg.params = bench_solver;
      cfg.seed = seed;
      cfg.noise_sigma = sigma;
      cfg.factors.clear();
      for (const auto& f : split_list(factors_arg)) cfg.factors.push_back(std::stoi(f));
      cfg.methods.clear();
      for (const auto& m : split_list(methods_arg)) {
        const auto parsed = depthsr::parse_method(m);
        if (!parsed) throw std::invalid_argument("unknown method '" + m + "'");
        cfg.methods.push_back(*parsed);
      }
      const auto report = depthsr::run_benchmark(cfg);
      write_text(report_path, report.to_csv());
      if (!markdown_path.empty()) write_text(markdown_path, report.to_markdown());
      std::fputs(report.to_markdown().c_str(), stdout);
      for (const auto& e : report.errors) std::fprintf(stderr, "skipped %s\n", e.c_str());
    } else if (*simulate) {
      const auto hr = depthsr::read_depth(sim_in);
      depthsr::write_depth(depthsr::simulate_lr(hr, sim_factor, sim_sigma, sim_seed), sim_out);
    } else if (*synth) {
      const auto scene = depthsr::make_step_scene();
      std::filesystem::create_directories(synth_dir);
      depthsr::write_depth(scene.depth, std::filesystem::path(synth_dir) / "gt.pfm");
      depthsr::write_guide(scene.guide, std::filesystem::path(synth_dir) / "guide.pgm");
    }
  } catch (const depthsr::NumericalError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitNumerical;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitInput;
  }
  return 0;
}
