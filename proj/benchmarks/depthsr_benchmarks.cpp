#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "depthsr/fft_solver.hpp"
#include "depthsr/guided_filter.hpp"
#include "depthsr/l0t_prox.hpp"
#include "depthsr/pipeline.hpp"
#include "depthsr/simulate.hpp"
#include "depthsr/synthetic.hpp"

namespace {

template <typename Img>
Img random_image(int w, int h, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Img img(w, h);
  for (double& v : img.pixels()) v = dist(rng);
  return img;
}

void BM_BoxFilter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto img = random_image<depthsr::DepthImage>(n, n, 0.0, 255.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(depthsr::box_filter(img, 8));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_BoxFilter)->Arg(128)->Arg(512);

void BM_GuidedFilterCached(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = random_image<depthsr::DepthImage>(n, n, 0.0, 255.0, 2);
  const depthsr::GuidedFilter filter(random_image<depthsr::GuideImage>(n, n, 0.0, 1.0, 3), {8, 1e-4});
  for (auto _ : state) benchmark::DoNotOptimize(filter.apply(p));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_GuidedFilterCached)->Arg(128)->Arg(512);

void BM_SolveU(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = random_image<depthsr::DepthImage>(n, n, 0.0, 255.0, 4);
  const auto z = random_image<depthsr::DepthImage>(n, n, 0.0, 255.0, 5);
  const auto h = random_image<depthsr::Plane>(n, n, -2.0, 2.0, 6);
  const auto v = random_image<depthsr::Plane>(n, n, -2.0, 2.0, 7);
  const depthsr::OtfCache cache(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(depthsr::solve_u(d, z, h, v, 3.0, 0.5, cache));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SolveU)->Arg(128)->Arg(512);

void BM_ProxField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  std::vector<double> in(n), out(n);
  for (double& x : in) x = dist(rng);
  for (auto _ : state) {
    depthsr::prox_field(in, out, {0.75, 1.3});
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ProxField)->Arg(1 << 16)->Arg(1 << 20);

void BM_UpsampleStepScene(benchmark::State& state) {
  const auto scene = depthsr::make_step_scene();
  const auto lr = depthsr::simulate_lr(scene.depth, 4, 2.0, 7);
  depthsr::SolverParams params;
  for (auto _ : state) benchmark::DoNotOptimize(depthsr::upsample(lr, scene.guide, 4, params));
}
BENCHMARK(BM_UpsampleStepScene)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
