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

#ifndef HERODET_RECOGNITION_H_
#define HERODET_RECOGNITION_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "herodet/camp.h"
#include "herodet/classifier.h"
#include "herodet/detector.h"
#include "herodet/roi.h"

namespace herodet {

inline constexpr std::string_view kUnknownLabel = "unknown";

enum class ResultSource { kAppearance, kSkillRegion, kFirstSkill, kFused };
std::string_view source_name(ResultSource source);

struct RecognitionResult {
  std::string label;
  double confidence = 0.0;
  ResultSource source = ResultSource::kAppearance;

  bool known() const { return label != kUnknownLabel; }
};

struct RecognitionParams {
  // Minimum fused confidence for the leading hero.
  double fuse_threshold = 0.5;
  // Minimum appearance confidence for every other hero.
  double appearance_threshold = 0.5;
  CircleParams circles;
};

// Per-label mean confidence over the classifiers that produced a result;
// a label missing from one classifier's list counts as 0 there. Ties go to
// the lexicographically smaller label. Below `threshold` the label becomes
// "unknown" (the confidence is kept).
RecognitionResult fuse_leading(const Prediction& appearance,
                               const std::optional<Prediction>& skill_region,
                               const std::optional<Prediction>& first_skill,
                               double threshold);

// Crops and per-ROI outputs behind a fused leading-hero result.
struct LeadingDetail {
  Rect skill_region;
  std::optional<Rect> first_skill;  // frame coordinates
  std::optional<Circle> first_skill_circle;  // frame coordinates
  Prediction appearance;
  std::optional<Prediction> skill;
  std::optional<Prediction> first;
};

struct HeroRecognition {
  Detection detection;
  Rect appearance_rect;
  RecognitionResult result;
  std::optional<LeadingDetail> leading;
};

// Routes one frame's camp-classified detections through the classifiers.
// The highest-scored self bar gets all three crops fused; every other bar
// gets an appearance-only result. The skill region is cropped only when a
// self bar exists. `frame` is the normalized RGB frame.
std::vector<HeroRecognition> recognize_frame(
    const Image& frame, std::span<const Detection> detections,
    const ClassifierSet& classifiers, const RecognitionParams& params);

// Per-video accumulation of recognized heroes, grouped by camp.
struct HeroTally {
  std::string label;
  double confidence = 0.0;  // sum over frames
  int frames = 0;
};

struct VideoSummary {
  // Each list sorted by descending accumulated confidence, then label.
  std::map<Camp, std::vector<HeroTally>> camps;
};

// Commutative, associative accumulator. Confidences are summed in integer
// nano-units so the total is exact and independent of frame order or
// partitioning.
class VideoAccumulator {
 public:
  static constexpr double kUnitsPerConfidence = 1e9;

  void add(Camp camp, const RecognitionResult& result);
  void add_frame(std::span<const HeroRecognition> frame);
  void merge(const VideoAccumulator& other);

  VideoSummary summary() const;

  friend bool operator==(const VideoAccumulator&,
                         const VideoAccumulator&) = default;

 private:
  struct Cell {
    int64_t units = 0;
    int frames = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
  };
  std::map<std::pair<Camp, std::string>, Cell> cells_;
};

VideoSummary accumulate_video(
    std::span<const std::vector<HeroRecognition>> frames);

}  // namespace herodet

#endif  // HERODET_RECOGNITION_H_
