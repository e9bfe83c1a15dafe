#pragma once

#include "depthsr/image.hpp"

namespace depthsr {

/// Piecewise-constant test scene with one slope-1 staircase.
struct SyntheticScene {
  DepthImage depth;
  GuideImage guide;
  Rect staircase;  // depth increases by one level per column inside
  Rect flat;       // constant background strip
};

/// 96x96 integer-level depth (background, a box, a disc, a 64-column
/// staircase) and a guide built from the depth plus a low-amplitude texture.
SyntheticScene make_step_scene();

}  // namespace depthsr
