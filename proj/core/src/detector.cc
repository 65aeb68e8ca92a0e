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

#include "herodet/detector.h"

#include <stdexcept>

namespace herodet {

BoxF to_source(const Rect& r, double scale) {
  return {r.x / scale, r.y / scale, r.w / scale, r.h / scale};
}

Detector::Detector(BloodBarTemplate tmpl, DetectorParams params)
    : tmpl_(std::move(tmpl)),
      params_(params),
      nms_{params.nms_t_x.value_or(tmpl_.width() / 2), params.nms_t_y},
      camp_region_(camp_sample_region(tmpl_, params.camp_strip_width)) {
  params_.score.validate();
  if (nms_.t_x < 0 || nms_.t_y < 0) {
    throw std::invalid_argument("NMS thresholds must be non-negative");
  }
}

DetectionTrace Detector::trace(const Image& frame) const {
  DetectionTrace t;
  const Image gray = to_grayscale(frame);
  t.match = masked_match(gray, tmpl_);
  std::vector<PeakCandidate> maxima =
      find_local_maxima(t.match, params_.score.radius);
  t.maxima = maxima.size();
  t.ranked = rank_and_score(t.match, std::move(maxima), params_.score);
  t.thresholded = threshold_candidates(t.ranked, params_.score);
  t.suppressed = suppress(t.thresholded, nms_);
  for (const PeakCandidate& c : t.suppressed) {
    const MeanColor color = leftmost_mean_color(frame, c.x, c.y, camp_region_);
    const CampVerdict verdict = classify_camp(color);
    if (verdict.rejected()) continue;
    t.detections.push_back({Rect{c.x, c.y, tmpl_.width(), tmpl_.height()},
                            c.value, c.score, *verdict.camp});
  }
  return t;
}

std::vector<Detection> Detector::detect(const Image& frame) const {
  return trace(frame).detections;
}

}  // namespace herodet
