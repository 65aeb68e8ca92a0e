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

#include "herodet/recognition.h"

#include <algorithm>
#include <cmath>

namespace herodet {

std::string_view source_name(ResultSource source) {
  switch (source) {
    case ResultSource::kAppearance:
      return "appearance";
    case ResultSource::kSkillRegion:
      return "skill_region";
    case ResultSource::kFirstSkill:
      return "first_skill";
    case ResultSource::kFused:
      return "fused";
  }
  return "fused";
}

RecognitionResult fuse_leading(const Prediction& appearance,
                               const std::optional<Prediction>& skill_region,
                               const std::optional<Prediction>& first_skill,
                               double threshold) {
  std::map<std::string, double> totals;
  int available = 1;
  for (const auto& s : appearance) totals[s.label] += s.confidence;
  for (const auto* p : {&skill_region, &first_skill}) {
    if (!p->has_value()) continue;
    ++available;
    for (const auto& s : **p) totals[s.label] += s.confidence;
  }
  RecognitionResult out{std::string(kUnknownLabel), 0.0, ResultSource::kFused};
  // std::map iterates labels in order, so `>` keeps the smallest on ties.
  std::string best;
  double best_total = -1.0;
  for (const auto& [label, total] : totals) {
    if (total > best_total) {
      best_total = total;
      best = label;
    }
  }
  if (best_total < 0.0) return out;
  out.confidence = std::clamp(best_total / available, 0.0, 1.0);
  if (out.confidence >= threshold) out.label = best;
  return out;
}

namespace {

RecognitionResult appearance_only(const Prediction& p, double threshold) {
  if (p.empty()) {
    return {std::string(kUnknownLabel), 0.0, ResultSource::kAppearance};
  }
  const LabelScore& top = p.front();
  return {top.confidence >= threshold ? top.label : std::string(kUnknownLabel),
          top.confidence, ResultSource::kAppearance};
}

}  // namespace

std::vector<HeroRecognition> recognize_frame(
    const Image& frame, std::span<const Detection> detections,
    const ClassifierSet& classifiers, const RecognitionParams& params) {
  std::vector<HeroRecognition> out;
  if (detections.empty()) return out;

  int leading = -1;
  for (size_t i = 0; i < detections.size(); ++i) {
    if (detections[i].camp != Camp::kSelf) continue;
    if (leading < 0 || detections[i].score > detections[leading].score) {
      leading = static_cast<int>(i);
    }
  }

  for (size_t i = 0; i < detections.size(); ++i) {
    const Detection& det = detections[i];
    HeroRecognition hr;
    hr.detection = det;
    hr.appearance_rect = appearance_rect(
        det.bar.x, det.bar.y, {det.bar.w, det.bar.h}, frame.size());
    const Prediction app = classifiers.classify(
        RoiType::kAppearance, crop(frame, hr.appearance_rect).image);

    if (static_cast<int>(i) != leading) {
      hr.result = appearance_only(app, params.appearance_threshold);
      out.push_back(std::move(hr));
      continue;
    }

    LeadingDetail detail;
    detail.appearance = app;
    detail.skill_region = skill_region_rect(frame.size());
    const Image skill = crop(frame, detail.skill_region).image;
    if (classifiers.has(RoiType::kSkillRegion)) {
      detail.skill = classifiers.classify(RoiType::kSkillRegion, skill);
    }
    const Rect search = first_skill_search_area(skill.size());
    const Image search_gray = to_grayscale(crop(skill, search).image);
    std::vector<Circle> circles = detect_circles(search_gray, params.circles);
    for (Circle& c : circles) {
      c.cx += search.x;
      c.cy += search.y;
    }
    if (const auto rect = first_skill_rect(skill.size(), circles)) {
      detail.first_skill = Rect{rect->x + detail.skill_region.x,
                                rect->y + detail.skill_region.y, rect->w,
                                rect->h};
      Circle c = *std::max_element(
          circles.begin(), circles.end(),
          [](const Circle& a, const Circle& b) { return a.r < b.r; });
      c.cx += detail.skill_region.x;
      c.cy += detail.skill_region.y;
      detail.first_skill_circle = c;
      if (classifiers.has(RoiType::kFirstSkill)) {
        detail.first = classifiers.classify(RoiType::kFirstSkill,
                                            crop(skill, *rect).image);
      }
    }
    hr.result = fuse_leading(detail.appearance, detail.skill, detail.first,
                             params.fuse_threshold);
    hr.leading = std::move(detail);
    out.push_back(std::move(hr));
  }
  return out;
}

void VideoAccumulator::add(Camp camp, const RecognitionResult& result) {
  if (!result.known()) return;
  Cell& cell = cells_[{camp, result.label}];
  cell.units += static_cast<int64_t>(
      std::llround(result.confidence * kUnitsPerConfidence));
  cell.frames += 1;
}

void VideoAccumulator::add_frame(std::span<const HeroRecognition> frame) {
  for (const HeroRecognition& hr : frame) add(hr.detection.camp, hr.result);
}

void VideoAccumulator::merge(const VideoAccumulator& other) {
  for (const auto& [key, cell] : other.cells_) {
    Cell& mine = cells_[key];
    mine.units += cell.units;
    mine.frames += cell.frames;
  }
}

VideoSummary VideoAccumulator::summary() const {
  VideoSummary s;
  for (const auto& [key, cell] : cells_) {
    s.camps[key.first].push_back(
        {key.second, cell.units / kUnitsPerConfidence, cell.frames});
  }
  for (auto& [camp, list] : s.camps) {
    std::stable_sort(list.begin(), list.end(),
                     [](const HeroTally& a, const HeroTally& b) {
                       return a.confidence > b.confidence;
                     });
  }
  return s;
}

VideoSummary accumulate_video(
    std::span<const std::vector<HeroRecognition>> frames) {
  VideoAccumulator acc;
  for (const auto& f : frames) acc.add_frame(f);
  return acc.summary();
}

}  // namespace herodet
