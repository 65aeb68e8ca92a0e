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

#include "herodet/camp.h"

#include <algorithm>
#include <stdexcept>

namespace herodet {

std::string_view camp_name(Camp camp) {
  switch (camp) {
    case Camp::kSelf:
      return "self";
    case Camp::kFriend:
      return "friend";
    case Camp::kEnemy:
      return "enemy";
    case Camp::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<Camp> parse_camp(std::string_view name) {
  for (Camp c : {Camp::kSelf, Camp::kFriend, Camp::kEnemy, Camp::kUnknown}) {
    if (camp_name(c) == name) return c;
  }
  return std::nullopt;
}

Rect camp_sample_region(const BloodBarTemplate& tmpl, int strip_width) {
  if (strip_width < 1) {
    throw std::invalid_argument("camp strip width must be >= 1");
  }
  const Rect& fill = tmpl.fill_region();
  if (fill.empty()) {
    throw std::invalid_argument("template has no fill region to sample");
  }
  return {fill.x, fill.y, std::min(strip_width, fill.w), fill.h};
}

MeanColor leftmost_mean_color(const Image& rgb_frame, int origin_x,
                              int origin_y, const Rect& region) {
  const Rect r{origin_x + region.x, origin_y + region.y, region.w, region.h};
  if (r.empty() || !rgb_frame.bounds().contains(r)) {
    throw std::out_of_range("camp sampling region lies outside the frame");
  }
  double sr = 0.0, sg = 0.0, sb = 0.0;
  for (int y = r.y; y < r.bottom(); ++y) {
    for (int x = r.x; x < r.right(); ++x) {
      const Rgb c = rgb_frame.rgb(x, y);
      sr += c.r;
      sg += c.g;
      sb += c.b;
    }
  }
  const double n = static_cast<double>(r.w) * r.h;
  return {sr / n, sg / n, sb / n};
}

CampVerdict classify_camp(double c_r, double c_g, double c_b) {
  const double c[3] = {c_r, c_g, c_b};
  constexpr Camp kByChannel[3] = {Camp::kEnemy, Camp::kSelf, Camp::kFriend};
  for (int i = 0; i < 3; ++i) {
    const double a = c[(i + 1) % 3];
    const double b = c[(i + 2) % 3];
    if (c[i] > 100.0 && c[i] > 1.5 * a && c[i] > 1.5 * b) {
      return {kByChannel[i]};
    }
  }
  const bool all_mid = std::all_of(std::begin(c), std::end(c), [](double v) {
    return v >= 70.0 && v <= 100.0;
  });
  if (all_mid) return {Camp::kUnknown};
  return CampVerdict::reject();
}

}  // namespace herodet
