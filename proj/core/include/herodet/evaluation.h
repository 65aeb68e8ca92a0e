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

#ifndef HERODET_EVALUATION_H_
#define HERODET_EVALUATION_H_

#include <filesystem>
#include <span>
#include <vector>

#include "herodet/detector.h"
#include "herodet/synth.h"

namespace herodet {

// A detection mapped back to source-image coordinates.
struct SourceDetection {
  BoxF bar;
  Camp camp = Camp::kUnknown;
  double score = 0.0;
};

struct FrameMatch {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  double max_center_error = 0.0;  // over matched pairs
};

// Greedy one-to-one matching by ascending center distance. A pair qualifies
// when the centers are at most `radius` apart and the camps agree.
FrameMatch match_detections(std::span<const SourceDetection> detections,
                            std::span<const synth::TruthBar> truth,
                            double radius);

struct LatencyStats {
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
};

// Nearest-rank percentiles. Throws std::invalid_argument on empty input.
LatencyStats latency_stats(std::vector<double> samples_ms);

struct BenchReport {
  int frames = 0;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  double precision = 1.0;  // 1 when nothing was detected
  double recall = 1.0;     // 1 when nothing was expected
  double max_center_error = 0.0;
  double match_radius = 0.0;
  LatencyStats latency;  // normalization plus detection, per frame
};

// Runs the detector over every manifest frame on the calling thread and
// compares against ground truth. Throws std::runtime_error on a missing,
// corrupt or empty manifest and on unreadable frames.
BenchReport run_bench(const std::filesystem::path& corpus,
                      const Detector& detector, double match_radius);

// Source-coordinate detections of one source image.
std::vector<SourceDetection> detect_source(const Detector& detector,
                                           const Image& source);

}  // namespace herodet

#endif  // HERODET_EVALUATION_H_
