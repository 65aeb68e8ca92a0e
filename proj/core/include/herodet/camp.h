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

#ifndef HERODET_CAMP_H_
#define HERODET_CAMP_H_

#include <optional>
#include <string_view>

#include "herodet/image.h"
#include "herodet/template_match.h"

namespace herodet {

enum class Camp {
  kSelf,     // green: the hero the video's player controls
  kFriend,   // blue
  kEnemy,    // red
  kUnknown,  // bar too empty to tell
};

std::string_view camp_name(Camp camp);
// Inverse of camp_name; nullopt for anything else.
std::optional<Camp> parse_camp(std::string_view name);

// A camp, or a rejected (false) blood-bar detection.
struct CampVerdict {
  std::optional<Camp> camp;

  bool rejected() const { return !camp.has_value(); }
  static CampVerdict reject() { return {}; }

  friend bool operator==(const CampVerdict&, const CampVerdict&) = default;
};

struct MeanColor {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// Sampling strip relative to the template's top-left: `strip_width` columns
// at the left end of the fill region, spanning its full height.
Rect camp_sample_region(const BloodBarTemplate& tmpl, int strip_width = 4);

// Mean color of `region` (template-relative) for a bar whose template
// placement has its top-left at `origin`. Throws std::out_of_range when the
// region falls outside the frame.
MeanColor leftmost_mean_color(const Image& rgb_frame, int origin_x,
                              int origin_y, const Rect& region);

// Dominant channel above 100 and 1.5x both others picks the camp; otherwise
// all channels in [70, 100] means an empty bar; anything else is rejected.
CampVerdict classify_camp(double c_r, double c_g, double c_b);
inline CampVerdict classify_camp(const MeanColor& c) {
  return classify_camp(c.r, c.g, c.b);
}

}  // namespace herodet

#endif  // HERODET_CAMP_H_
