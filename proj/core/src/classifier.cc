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

#include "herodet/classifier.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "herodet/roi.h"

namespace herodet {

std::string_view roi_name(RoiType roi) {
  switch (roi) {
    case RoiType::kAppearance:
      return "appearance";
    case RoiType::kSkillRegion:
      return "skill_region";
    case RoiType::kFirstSkill:
      return "first_skill";
  }
  return "appearance";
}

std::optional<RoiType> parse_roi(std::string_view name) {
  for (RoiType r :
       {RoiType::kAppearance, RoiType::kSkillRegion, RoiType::kFirstSkill}) {
    if (roi_name(r) == name) return r;
  }
  return std::nullopt;
}

int roi_size(RoiType roi) {
  switch (roi) {
    case RoiType::kAppearance:
      return kAppearanceSize;
    case RoiType::kSkillRegion:
      return kSkillRegionSize;
    case RoiType::kFirstSkill:
      return kFirstSkillSize;
  }
  return kAppearanceSize;
}

bool is_valid_prediction(const Prediction& p) {
  std::set<std::string_view> seen;
  for (size_t i = 0; i < p.size(); ++i) {
    const double c = p[i].confidence;
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) return false;
    if (i > 0 && c > p[i - 1].confidence) return false;
    if (!seen.insert(p[i].label).second) return false;
  }
  return true;
}

Prediction make_prediction(std::vector<LabelScore> scores) {
  std::sort(scores.begin(), scores.end(),
            [](const LabelScore& a, const LabelScore& b) {
              if (a.confidence != b.confidence) {
                return a.confidence > b.confidence;
              }
              return a.label < b.label;
            });
  if (!is_valid_prediction(scores)) {
    throw std::invalid_argument(
        "classifier output violates the contract (confidences must lie in "
        "[0, 1] with unique labels)");
  }
  return scores;
}

ClassifierSet::ClassifierSet(std::shared_ptr<Classifier> appearance,
                             std::shared_ptr<Classifier> skill_region,
                             std::shared_ptr<Classifier> first_skill) {
  slots_[static_cast<int>(RoiType::kAppearance)].classifier =
      std::move(appearance);
  slots_[static_cast<int>(RoiType::kSkillRegion)].classifier =
      std::move(skill_region);
  slots_[static_cast<int>(RoiType::kFirstSkill)].classifier =
      std::move(first_skill);
}

Prediction ClassifierSet::classify(RoiType roi, const Image& crop) const {
  const Slot& s = slot(roi);
  if (!s.classifier) {
    throw std::logic_error("no classifier configured for " +
                           std::string(roi_name(roi)));
  }
  Prediction p;
  if (s.classifier->thread_safe()) {
    p = s.classifier->classify(crop);
  } else {
    std::lock_guard<std::mutex> lock(*s.mu);
    p = s.classifier->classify(crop);
  }
  if (!is_valid_prediction(p)) {
    throw std::runtime_error(std::string(roi_name(roi)) +
                             " classifier returned an invalid prediction");
  }
  return p;
}

}  // namespace herodet
