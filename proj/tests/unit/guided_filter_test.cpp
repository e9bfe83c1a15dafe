#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "depthsr/errors.hpp"
#include "depthsr/guided_filter.hpp"
#include "oracles.hpp"

namespace depthsr {
namespace {

double max_abs_diff(const DepthImage& a, const DepthImage& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.pixels()[i] - b.pixels()[i]));
  return m;
}

TEST(BoxFilter, RadiusZeroIsIdentity) {
  std::mt19937_64 rng(1);
  const auto img = testing::random_image<DepthTag>(7, 5, rng, -3.0, 9.0);
  EXPECT_EQ(box_filter(img, 0), img);
}

TEST(BoxFilter, ConstantStaysConstant) {
  const DepthImage img(9, 6, 4.25);
  for (int r : {1, 2, 5, 20}) {
    const auto out = box_filter(img, r);
    for (double v : out.pixels()) EXPECT_NEAR(v, 4.25, 1e-12);
  }
}

TEST(BoxFilter, CenterIsNeighborhoodMean) {
  std::mt19937_64 rng(2);
  const auto img = testing::random_image<DepthTag>(5, 5, rng);
  const auto out = box_filter(img, 1);
  double sum = 0.0;
  for (int y = 1; y <= 3; ++y) {
    for (int x = 1; x <= 3; ++x) sum += img(x, y);
  }
  EXPECT_NEAR(out(2, 2), sum / 9.0, 1e-12);
}

TEST(BoxFilter, ClippedWindowsMatchDirectSum) {
  std::mt19937_64 rng(3);
  const auto img = testing::random_image<DepthTag>(11, 7, rng);
  for (int r : {1, 2, 4, 9}) {
    const auto out = box_filter(img, r);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) EXPECT_NEAR(out(x, y), testing::naive_window_mean(img, x, y, r), 1e-12);
    }
  }
}

TEST(BoxFilter, NegativeRadiusThrows) { EXPECT_THROW(box_filter(DepthImage(3, 3), -1), std::invalid_argument); }

TEST(GuidedFilterParams, Validation) {
  EXPECT_NO_THROW((GuidedFilterParams{1, 1e-6}.validate()));
  EXPECT_THROW((GuidedFilterParams{0, 1e-3}.validate()), std::invalid_argument);
  EXPECT_THROW((GuidedFilterParams{2, 0.0}.validate()), std::invalid_argument);
}

TEST(GuidedFilter, MatchesBruteForce8x8) {
  std::mt19937_64 rng(4);
  const auto p = testing::random_image<DepthTag>(8, 8, rng, 0.0, 50.0);
  const auto g = testing::random_image<GuideTag>(8, 8, rng);
  const auto q = guided_filter(p, g, {2, 1e-3});
  EXPECT_LE(max_abs_diff(q, testing::naive_guided_filter(p, g, 2, 1e-3)), 1e-9);
}

TEST(GuidedFilter, MatchesBruteForceRandom16x16) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = testing::random_image<DepthTag>(16, 16, rng, 0.0, 255.0);
    const auto g = testing::random_image<GuideTag>(16, 16, rng);
    for (auto params : {GuidedFilterParams{1, 1e-4}, GuidedFilterParams{3, 1e-2}, GuidedFilterParams{8, 1e-4}}) {
      const auto q = guided_filter(p, g, params);
      EXPECT_LE(max_abs_diff(q, testing::naive_guided_filter(p, g, params.radius, params.epsilon)), 1e-9);
    }
  }
}

TEST(GuidedFilter, ConstantInputIsExact) {
  std::mt19937_64 rng(6);
  const auto g = testing::random_image<GuideTag>(13, 9, rng);
  for (double c : {0.0, 1.0, 37.3, -2.5e3}) {
    const DepthImage p(13, 9, c);
    EXPECT_EQ(guided_filter(p, g, {3, 1e-4}), p);
  }
}

TEST(GuidedFilter, OffsetInvariance) {
  std::mt19937_64 rng(7);
  const auto p = testing::random_image<DepthTag>(16, 16, rng, 0.0, 100.0);
  const auto g = testing::random_image<GuideTag>(16, 16, rng);
  const auto base = guided_filter(p, g, {2, 1e-3});
  for (double c : {1.0, -17.5, 250.0}) {
    DepthImage shifted = p;
    for (double& v : shifted.pixels()) v += c;
    const auto q = guided_filter(shifted, g, {2, 1e-3});
    for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(q.pixels()[i], base.pixels()[i] + c, 1e-12);
  }
}

// With a -> 0 the output is mean(b) = mean(mean(p)), i.e. two box passes.
TEST(GuidedFilter, LargeEpsilonApproachesDoubleBoxFilter) {
  std::mt19937_64 rng(8);
  const auto p = testing::random_image<DepthTag>(12, 12, rng);
  const auto g = retag<GuideTag>(p);
  const auto q = guided_filter(p, g, {2, 1e9});
  EXPECT_LE(max_abs_diff(q, box_filter(box_filter(p, 2), 2)), 1e-6);
}

TEST(GuidedFilter, ConstantGuideStaysInRange) {
  std::mt19937_64 rng(9);
  const auto p = testing::random_image<DepthTag>(10, 10, rng, 3.0, 8.0);
  const auto q = guided_filter(p, GuideImage(10, 10, 0.5), {2, 1e-4});
  const auto [lo, hi] = min_max(p);
  for (double v : q.pixels()) {
    EXPECT_GE(v, lo - 1e-12);
    EXPECT_LE(v, hi + 1e-12);
  }
}

TEST(GuidedFilter, CachedFilterMatchesFreeFunction) {
  std::mt19937_64 rng(10);
  const auto g = testing::random_image<GuideTag>(14, 9, rng);
  const GuidedFilter f(g, {3, 1e-3});
  for (int i = 0; i < 3; ++i) {
    const auto p = testing::random_image<DepthTag>(14, 9, rng, 0.0, 20.0);
    EXPECT_EQ(f.apply(p), guided_filter(p, g, {3, 1e-3}));
  }
}

TEST(GuidedFilter, ShapeMismatchThrows) {
  EXPECT_THROW(guided_filter(DepthImage(4, 4), GuideImage(4, 5), {1, 1e-3}), DimensionMismatch);
}

}  // namespace
}  // namespace depthsr
