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

#ifndef HERODET_TEMPLATE_MATCH_H_
#define HERODET_TEMPLATE_MATCH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "herodet/image.h"

namespace herodet {

// Geometry of the stock blood bar at 720p. The renderer draws bars from the
// same layout, so the shipped template and synthetic scenes cannot drift.
//
//   col 0 / 65, row 0 / 11     dark outline
//   col 1 / 64, row 1 / 10     light frame
//   level_box interior         level digit (ignored by the mask)
//   col 11 dark, col 12 light  separator
//   fill interior              camp-colored health fill (ignored)
struct BarLayout {
  Size size{66, 12};
  Rect level_box{2, 2, 9, 8};
  Rect fill{13, 2, 51, 8};
  uint8_t outline = 16;
  uint8_t frame = 200;
  // Gray of an empty (fully depleted) stretch of the fill area.
  uint8_t empty_fill = 85;
};

const BarLayout& standard_bar_layout();

// Grayscale template plus a binary mask marking the pixels that take part
// in matching.
class BloodBarTemplate {
 public:
  // `mask` is single-channel; any nonzero pixel counts as "used". Throws
  // std::invalid_argument on dimension mismatch, an all-zero mask, or a
  // mask larger than the matcher's accumulator range.
  BloodBarTemplate(Image image, Image mask);

  // The built-in 66x12 template, identical to assets/template.png.
  static BloodBarTemplate standard();
  // template.png + template_mask.png (mask pixels are 0 or 255).
  static BloodBarTemplate load(const std::filesystem::path& image_path,
                               const std::filesystem::path& mask_path);

  const Image& image() const { return image_; }
  // 0/255 mask image, suitable for saving.
  const Image& mask() const { return mask_; }
  bool used(int x, int y) const { return mask_.at(x, y) != 0; }
  int width() const { return image_.width(); }
  int height() const { return image_.height(); }
  Size size() const { return image_.size(); }
  int mask_count() const { return mask_count_; }

  // Bounding box of the widest ignored region enclosed by used pixels: the
  // health fill area. Empty when no such region exists.
  const Rect& fill_region() const { return fill_region_; }

 private:
  Image image_;
  Image mask_;
  int mask_count_ = 0;
  Rect fill_region_;
};

struct PeakCandidate {
  int x = 0;  // top-left of the template placement in the normalized frame
  int y = 0;
  float value = 0.0f;  // raw match degree at (x, y)
  double score = 0.0;
  bool is_real_detection = true;

  friend bool operator==(const PeakCandidate&, const PeakCandidate&) = default;
};

struct ScoreParams {
  double alpha = 1.0;  // weight of the peak value
  double beta = 4.0;   // weight of the mean contrast against the window
  int radius = 12;     // maximum-filter radius
  int top_k = 20;
  double score_threshold = 4.45; // calibrated with tools/calibrate.cc

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// Masked normalized cross-correlation over every placement of the template
// inside the frame. Windows with zero masked variance score 0. Output size is
// (frame_w - tmpl_w + 1) x (frame_h - tmpl_h + 1).
MatchMap masked_match(const Image& gray_frame, const BloodBarTemplate& tmpl);

// Positions where the map equals its maximum-filtered self, in row-major
// order. Plateaus yield every tied pixel.
std::vector<PeakCandidate> find_local_maxima(const MatchMap& map, int radius);

// Contrast score for the peak at (x, y): alpha * v0 + beta * mean over
// the clipped window (center excluded) of (v0 - vi).
double peak_score(const MatchMap& map, int x, int y, int radius, double alpha,
                  double beta);

// Keeps the top_k candidates by raw value (ties in row-major order), scores
// them and returns them sorted by descending score.
std::vector<PeakCandidate> rank_and_score(const MatchMap& map,
                                          std::vector<PeakCandidate> candidates,
                                          const ScoreParams& params);

std::vector<PeakCandidate> threshold_candidates(
    std::span<const PeakCandidate> candidates, const ScoreParams& params);

}  // namespace herodet

#endif  // HERODET_TEMPLATE_MATCH_H_
