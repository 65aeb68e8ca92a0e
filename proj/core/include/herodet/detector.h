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

#ifndef HERODET_DETECTOR_H_
#define HERODET_DETECTOR_H_

#include <optional>
#include <vector>

#include "herodet/camp.h"
#include "herodet/image.h"
#include "herodet/nms.h"
#include "herodet/template_match.h"

namespace herodet {

struct DetectorParams {
  ScoreParams score;
  // Unset means half the template width.
  std::optional<int> nms_t_x;
  int nms_t_y = 1;
  int camp_strip_width = 4;
};

// One blood bar in normalized-frame coordinates.
struct Detection {
  Rect bar;
  float value = 0.0f;
  double score = 0.0;
  Camp camp = Camp::kUnknown;

  double center_x() const { return bar.x + bar.w / 2.0; }
  double center_y() const { return bar.y + bar.h / 2.0; }
};

struct BoxF {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(const BoxF&, const BoxF&) = default;
};

// Maps a normalized-frame rect back to source-image coordinates.
BoxF to_source(const Rect& r, double scale);

// Every intermediate stage of one detection run; for tests and debugging.
struct DetectionTrace {
  MatchMap match;
  size_t maxima = 0;  // local-maximum count before top-k
  std::vector<PeakCandidate> ranked;
  std::vector<PeakCandidate> thresholded;
  std::vector<PeakCandidate> suppressed;
  std::vector<Detection> detections;
};

// Blood-bar detector: grayscale, masked matching, local maxima, contrast
// scoring, thresholding, suppression and camp filtering. Immutable after
// construction and safe to share between threads.
class Detector {
 public:
  explicit Detector(BloodBarTemplate tmpl, DetectorParams params = {});

  const BloodBarTemplate& bar_template() const { return tmpl_; }
  const DetectorParams& params() const { return params_; }
  const NmsParams& nms() const { return nms_; }

  // `frame` must already be at the normalized height. Gray frames go through
  // the camp rules as neutral colors. Results are sorted by descending
  // score; bars the camp rules reject are dropped.
  std::vector<Detection> detect(const Image& frame) const;
  DetectionTrace trace(const Image& frame) const;

 private:
  BloodBarTemplate tmpl_;
  DetectorParams params_;
  NmsParams nms_;
  Rect camp_region_;
};

}  // namespace herodet

#endif  // HERODET_DETECTOR_H_
