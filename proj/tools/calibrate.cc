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

// Score-threshold calibration. Renders scenes, runs the detector with no
// score threshold and splits the surviving detections into true and false
// ones against ground truth. Suppression and camp filtering are decided per
// candidate in score order, so the detections at threshold t are exactly
// those scoring >= t here. Suppressed candidates away from every bar are
// also tracked before camp filtering; the suggested threshold separates
// bars from those by score alone.
//
// Usage: herodet_calibrate [frames] [seed]

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>

#include "herodet/detector.h"
#include "herodet/evaluation.h"
#include "herodet/synth.h"
#include "json.hpp"

int main(int argc, char** argv) {
  using namespace herodet;
  const int frames = argc > 1 ? std::atoi(argv[1]) : 400;
  const uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
  if (frames < 1) {
    std::cerr << "usage: herodet_calibrate [frames] [seed]\n";
    return 2;
  }

  DetectorParams params;
  params.score.score_threshold = -std::numeric_limits<double>::max();
  const Detector detector(BloodBarTemplate::standard(), params);

  synth::Rng rng(seed);
  const std::vector<Size> dims = {
      {1280, 720}, {960, 720}, {1560, 720}, {1920, 1080}};
  double min_true = std::numeric_limits<double>::infinity();
  double max_false = -std::numeric_limits<double>::infinity();
  double max_shape_false = -std::numeric_limits<double>::infinity();
  int true_count = 0, false_count = 0, missed = 0, bars = 0;
  std::vector<double> false_scores;
  for (int i = 0; i < frames; ++i) {
    const Size d = dims[synth::uniform_int(rng, 0, 3)];
    const synth::SceneSpec spec = i % 10 == 9
                                      ? synth::shop_scene(rng(), d)
                                      : synth::random_scene(rng, d);
    const synth::RenderedScene scene = synth::render(spec);
    const auto dets = detect_source(detector, scene.image);
    // Suppressed candidates before camp filtering: how well the shape score
    // alone separates bars from clutter.
    const NormalizedFrame nf = normalize_height(scene.image);
    for (const PeakCandidate& c : detector.trace(nf.image).suppressed) {
      const SourceDetection probe{
          to_source(Rect{c.x, c.y, detector.bar_template().width(),
                         detector.bar_template().height()},
                    nf.scale),
          Camp::kUnknown, c.score};
      bool near_bar = false;
      for (const auto& t : scene.truth.bars) {
        const double dx = probe.bar.x - t.rect.x, dy = probe.bar.y - t.rect.y;
        near_bar = near_bar || std::hypot(dx, dy) <= 2.0 / nf.scale;
      }
      if (!near_bar) max_shape_false = std::max(max_shape_false, c.score);
    }
    const FrameMatch m = match_detections(dets, scene.truth.bars, 2.0);
    bars += static_cast<int>(scene.truth.bars.size());
    missed += m.false_negatives;
    // Re-run the matching one detection at a time to label each score.
    for (const SourceDetection& det : dets) {
      const FrameMatch one =
          match_detections(std::span(&det, 1), scene.truth.bars, 2.0);
      if (one.true_positives == 1) {
        ++true_count;
        min_true = std::min(min_true, det.score);
      } else {
        ++false_count;
        max_false = std::max(max_false, det.score);
        false_scores.push_back(det.score);
      }
    }
  }
  std::sort(false_scores.rbegin(), false_scores.rend());
  if (false_scores.size() > 10) false_scores.resize(10);

  nlohmann::json out = {{"frames", frames},
                        {"seed", seed},
                        {"bars", bars},
                        {"missed_at_any_threshold", missed},
                        {"true_detections", true_count},
                        {"false_detections", false_count},
                        {"min_true_score", min_true},
                        {"top_false_scores", false_scores},
                        {"max_shape_only_false_score", max_shape_false}};
  if (false_count == 0) {
    out["max_false_score"] = nullptr;
  } else {
    out["max_false_score"] = max_false;
  }
  // The threshold sits midway between the weakest true bar and the
  // strongest false candidate, judged before camp filtering so the score
  // alone rejects clutter.
  const double strongest_false = std::max(max_false, max_shape_false);
  if (true_count > 0 && min_true > strongest_false) {
    out["separable"] = true;
    out["suggested_threshold"] = (strongest_false + min_true) / 2.0;
  } else {
    out["separable"] = false;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}
