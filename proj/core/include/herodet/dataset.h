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

// Auto-labelled training samples from videos of one known hero. Only frames
// with a green bar near the frame center contribute, since that bar belongs
// to the player whose hero names the video.
//
// Output layout under the sample root:
//   <label>/<roi_type>/<frame_id>.png
//   samples_manifest.json

#ifndef HERODET_DATASET_H_
#define HERODET_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "herodet/classifier.h"
#include "herodet/detector.h"
#include "herodet/roi.h"

namespace herodet {

struct SampleRecord {
  RoiType roi = RoiType::kAppearance;
  std::string label;
  std::string frame_id;
  Rect crop;         // normalized-frame coordinates
  std::string file;  // relative to the sample root

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct ExtractOptions {
  // Central window holding the leading bar's center, as frame fractions.
  double center_width = 0.5;
  double center_height = 0.6;
  CircleParams circles;
  int jobs = 1;
};

struct ExtractResult {
  std::vector<SampleRecord> records;  // sorted by file
  std::vector<std::string> warnings;
};

// Detects bars in every frame, keeps the best-scored self bar whose center
// lies in the central window and writes its appearance and skill-region
// crops, plus the first-skill crop when a circle is found. Unreadable frames
// are skipped with a warning. Each sample file is written atomically.
// Frame ids are the file stems, so they must be unique within a call.
ExtractResult extract_leading_samples(
    const Detector& detector, std::span<const std::filesystem::path> frames,
    const std::string& label, const std::filesystem::path& out_dir,
    const ExtractOptions& options = {});

// True when the bar center lies in the central window of `frame`.
bool in_central_window(const Detection& det, Size frame, double width_fraction,
                       double height_fraction);

// samples_manifest.json. Saving merges with the records already listed in
// an existing manifest; records with the same file are replaced.
void save_samples_manifest(const std::filesystem::path& root,
                           std::span<const SampleRecord> records);
std::vector<SampleRecord> load_samples_manifest(
    const std::filesystem::path& root);

struct Split {
  std::vector<SampleRecord> train;
  std::vector<SampleRecord> test;
  std::vector<std::string> warnings;
};

// Seeded split stratified by label: each label contributes
// round(train_fraction * n) records to train and the rest to test, keeping at
// least one on each side. Labels with a single record go to train with a
// warning. Deterministic for fixed input and seed, independent of input
// order. Throws std::invalid_argument on empty input or a fraction outside
// (0, 1).
Split split_corpus(std::span<const SampleRecord> records, double train_fraction,
                   uint64_t seed);

}  // namespace herodet

#endif  // HERODET_DATASET_H_
