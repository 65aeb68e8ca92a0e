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

#ifndef HERODET_CLASSIFIER_H_
#define HERODET_CLASSIFIER_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "herodet/image.h"

namespace herodet {

// The three crops a leading hero is recognized from.
enum class RoiType { kAppearance, kSkillRegion, kFirstSkill };

std::string_view roi_name(RoiType roi);
std::optional<RoiType> parse_roi(std::string_view name);
// Crop side length in pixels for each ROI type.
int roi_size(RoiType roi);

struct LabelScore {
  std::string label;
  double confidence = 0.0;

  friend bool operator==(const LabelScore&, const LabelScore&) = default;
};

// Sorted by descending confidence with unique labels; confidences in [0, 1].
using Prediction = std::vector<LabelScore>;

// Sorts by descending confidence (ties by label) and validates the result.
// Throws std::invalid_argument on duplicate labels or out-of-range or
// non-finite confidences.
Prediction make_prediction(std::vector<LabelScore> scores);

// True when `p` satisfies every Prediction invariant.
bool is_valid_prediction(const Prediction& p);

class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual Prediction classify(const Image& crop) = 0;

  // Classifiers returning false get their calls serialized by the pipeline.
  virtual bool thread_safe() const { return true; }
};

// Nearest-centroid classifier over a 32x32 grayscale thumbnail normalized to
// zero mean and unit variance. Confidences are a softmax over negative
// Euclidean distances to each label centroid.
class ReferenceClassifier : public Classifier {
 public:
  static constexpr int kThumbSide = 32;
  static constexpr int kFeatureDims = kThumbSide * kThumbSide;
  static constexpr double kDefaultTemperature = 4.0;

  ReferenceClassifier(std::vector<std::string> labels,
                      std::vector<float> centroids,
                      double temperature = kDefaultTemperature);

  // Feature vector for one crop (any size, gray or RGB).
  static std::vector<float> feature(const Image& img);

  Prediction classify(const Image& crop) override;

  const std::vector<std::string>& labels() const { return labels_; }
  // Row-major labels().size() x kFeatureDims.
  const std::vector<float>& centroids() const { return centroids_; }
  std::span<const float> centroid(size_t label_index) const {
    return {centroids_.data() + label_index * kFeatureDims, kFeatureDims};
  }
  double temperature() const { return temperature_; }

  // Binary model file; layout in docs/model_format.md. Throws
  // std::runtime_error on I/O or format errors.
  void save(const std::filesystem::path& path) const;
  static ReferenceClassifier load(const std::filesystem::path& path);

 private:
  std::vector<std::string> labels_;
  std::vector<float> centroids_;
  double temperature_;
};

struct LabeledCrop {
  std::string label;
  Image image;
};

// Centroids are means of the per-sample features. The result does not
// depend on sample order. When `expected_labels` is non-empty, every entry
// must have at least one sample; the error message lists the missing ones.
ReferenceClassifier train_reference(
    std::span<const LabeledCrop> samples,
    std::span<const std::string> expected_labels = {},
    double temperature = ReferenceClassifier::kDefaultTemperature);

// Line-delimited JSON bridge to an external classifier process started with
// `/bin/sh -c command`. Each request is
//   {"image_path": "...", "roi_type": "appearance"}
// and each response
//   {"labels": [...], "confidences": [...]}
// One process serves every ROI type; see ExternalClassifier.
class ExternalBridge {
 public:
  explicit ExternalBridge(std::string command);
  ~ExternalBridge();
  ExternalBridge(const ExternalBridge&) = delete;
  ExternalBridge& operator=(const ExternalBridge&) = delete;

  // Writes `crop` to a scratch PNG and exchanges one request/response pair.
  // Throws std::runtime_error if the process dies or answers malformed JSON.
  Prediction classify(const Image& crop, RoiType roi);

 private:
  std::string request(const std::string& line);

  std::string command_;
  std::filesystem::path scratch_dir_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
  uint64_t counter_ = 0;
  std::mutex mu_;
};

// Adapts one ROI type of a shared bridge to the Classifier interface.
class ExternalClassifier : public Classifier {
 public:
  ExternalClassifier(std::shared_ptr<ExternalBridge> bridge, RoiType roi)
      : bridge_(std::move(bridge)), roi_(roi) {}

  Prediction classify(const Image& crop) override {
    return bridge_->classify(crop, roi_);
  }
  bool thread_safe() const override { return false; }

 private:
  std::shared_ptr<ExternalBridge> bridge_;
  RoiType roi_;
};

// One classifier per ROI type. Only the appearance slot is mandatory for
// recognition; missing skill classifiers simply drop out of the fusion.
class ClassifierSet {
 public:
  ClassifierSet() = default;
  ClassifierSet(std::shared_ptr<Classifier> appearance,
                std::shared_ptr<Classifier> skill_region,
                std::shared_ptr<Classifier> first_skill);

  bool has(RoiType roi) const { return slot(roi).classifier != nullptr; }

  // Runs the slot's classifier, serializing calls when it is not thread
  // safe, and validates the output against the Prediction contract.
  Prediction classify(RoiType roi, const Image& crop) const;

 private:
  struct Slot {
    std::shared_ptr<Classifier> classifier;
    std::shared_ptr<std::mutex> mu = std::make_shared<std::mutex>();
  };
  const Slot& slot(RoiType roi) const {
    return slots_[static_cast<int>(roi)];
  }

  Slot slots_[3];
};

}  // namespace herodet

#endif  // HERODET_CLASSIFIER_H_
