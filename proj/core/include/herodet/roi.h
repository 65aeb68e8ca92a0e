// Copyright 2026 The herodet Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HERODET_ROI_H_
#define HERODET_ROI_H_

#include <optional>
#include <vector>

#include "herodet/image.h"

namespace herodet {

// Crop sizes fed to the three hero classifiers.
inline constexpr int kAppearanceSize = 163;
inline constexpr int kSkillRegionSize = 360;
inline constexpr int kFirstSkillSize = 110;

// Gap between the bottom of a blood bar and the top of the hero crop.
inline constexpr int kAppearanceGap = 8;

struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
  int votes = 0;
};

// Moves `rect` so it lies inside `frame`, keeping its size; shrinks only when
// the frame itself is smaller.
Rect shift_inside(Rect rect, Size frame);

// 163x163 region under the bar whose template placement starts at
// (bar_x, bar_y), horizontally centered on the bar.
Rect appearance_rect(int bar_x, int bar_y, Size bar_size, Size frame);

// Aspect-ratio compensated skill panel location:
//   x = 0.5 w + 0.1875 w_norm, y = 0.475 h, side = 0.5 h,
// with w_norm = h * 16 / 9; rounded, then shifted inside the frame.
Rect skill_region_rect(Size frame);

// Same formula without rounding or clamping; for checks against the closed
// form.
struct RectF {
  double x, y, w, h;
};
RectF skill_region_exact(Size frame);

struct CircleParams {
  int r_min = 30;
  int r_max = 70;
  // Sobel magnitude below which a pixel is not an edge.
  double edge_threshold = 80.0;
  // Required fraction of the circumference backing the chosen radius.
  double support_fraction = 0.45;
  // Minimum center-accumulator votes, as a fraction of 2 pi r_min.
  double center_fraction = 0.25;
  int max_circles = 8;
};

// Gradient Hough transform: Sobel edges thinned along the gradient vote for
// centers along both gradient directions, then each center picks the radius
// with the strongest edge-distance histogram. Sorted by radius descending,
// then votes.
std::vector<Circle> detect_circles(const Image& gray, const CircleParams& params);
inline std::vector<Circle> detect_circles(const Image& gray, int r_min,
                                          int r_max) {
  CircleParams p;
  p.r_min = r_min;
  p.r_max = r_max;
  return detect_circles(gray, p);
}

// Lower-left quadrant of a skill region, where the first skill sits.
Rect first_skill_search_area(Size skill_region);

// 110x110 crop centered on the largest circle (circles in skill-region
// coordinates), shifted inside the region. nullopt without circles.
std::optional<Rect> first_skill_rect(Size skill_region,
                                     const std::vector<Circle>& circles);

}  // namespace herodet

#endif  // HERODET_ROI_H_
