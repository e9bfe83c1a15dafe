#include "depthsr/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace depthsr {

SyntheticScene make_step_scene() {
  constexpr int kSize = 96;
  constexpr double kBackground = 40.0;
  constexpr double kBox = 150.0;
  constexpr double kDisc = 210.0;
  constexpr double kStairBase = 90.0;

  SyntheticScene s;
  s.staircase = Rect{16, 58, 64, 32};
  s.flat = Rect{2, 48, 92, 8};
  s.depth = DepthImage(kSize, kSize, kBackground);

  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      double d = kBackground;
      if (x >= 8 && x < 40 && y >= 6 && y < 46) d = kBox;
      const double dx = x - 70.0;
      const double dy = y - 24.0;
      if (dx * dx + dy * dy <= 16.0 * 16.0) d = kDisc;
      const Rect& st = s.staircase;
      if (x >= st.x && x < st.x + st.width && y >= st.y && y < st.y + st.height) d = kStairBase + (x - st.x);
      s.depth(x, y) = d;
    }
  }

  std::vector<double> g(static_cast<std::size_t>(kSize) * kSize);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double shade = 0.15 + 0.7 * (s.depth(x, y) - kBackground) / (kDisc - kBackground);
      const double texture = 0.04 * std::sin(two_pi * x / 6.0) * std::sin(two_pi * y / 7.0);
      g[static_cast<std::size_t>(y) * kSize + x] = shade + texture;
    }
  }
  s.guide = make_guide(kSize, kSize, std::move(g));
  return s;
}

}  // namespace depthsr
