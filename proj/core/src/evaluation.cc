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

#include "herodet/evaluation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "herodet/png_io.h"

namespace herodet {

FrameMatch match_detections(std::span<const SourceDetection> detections,
                            std::span<const synth::TruthBar> truth,
                            double radius) {
  struct Pair {
    double dist;
    size_t det;
    size_t gt;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < detections.size(); ++i) {
    const BoxF& d = detections[i].bar;
    for (size_t j = 0; j < truth.size(); ++j) {
      if (detections[i].camp != truth[j].camp) continue;
      const BoxF& t = truth[j].rect;
      const double dist = std::hypot(d.x + d.w / 2 - (t.x + t.w / 2),
                                     d.y + d.h / 2 - (t.y + t.h / 2));
      if (dist <= radius) pairs.push_back({dist, i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.dist, a.det, a.gt) < std::tie(b.dist, b.det, b.gt);
  });
  std::vector<bool> det_used(detections.size()), gt_used(truth.size());
  FrameMatch m;
  for (const Pair& p : pairs) {
    if (det_used[p.det] || gt_used[p.gt]) continue;
    det_used[p.det] = gt_used[p.gt] = true;
    ++m.true_positives;
    m.max_center_error = std::max(m.max_center_error, p.dist);
  }
  m.false_positives = static_cast<int>(detections.size()) - m.true_positives;
  m.false_negatives = static_cast<int>(truth.size()) - m.true_positives;
  return m;
}

LatencyStats latency_stats(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("no latency samples");
  std::sort(samples.begin(), samples.end());
  auto rank = [&](double q) {
    const auto k = static_cast<size_t>(std::ceil(q * samples.size()));
    return samples[std::clamp<size_t>(k, 1, samples.size()) - 1];
  };
  LatencyStats s;
  s.mean_ms =
      std::accumulate(samples.begin(), samples.end(), 0.0) / samples.size();
  s.p50_ms = rank(0.5);
  s.p90_ms = rank(0.9);
  s.p99_ms = rank(0.99);
  s.max_ms = samples.back();
  return s;
}

std::vector<SourceDetection> detect_source(const Detector& detector,
                                           const Image& source) {
  const NormalizedFrame nf = normalize_height(source);
  std::vector<SourceDetection> out;
  for (const Detection& d : detector.detect(nf.image)) {
    out.push_back({to_source(d.bar, nf.scale), d.camp, d.score});
  }
  return out;
}

BenchReport run_bench(const std::filesystem::path& corpus,
                      const Detector& detector, double match_radius) {
  const synth::Manifest manifest = synth::load_manifest(corpus / "manifest.json");
  if (manifest.frames.empty()) {
    throw std::runtime_error("manifest lists no frames");
  }
  BenchReport r;
  r.match_radius = match_radius;
  std::vector<double> times;
  for (const synth::CorpusEntry& e : manifest.frames) {
    const Image source = read_png(corpus / e.file);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SourceDetection> dets = detect_source(detector, source);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    const FrameMatch m = match_detections(dets, e.truth.bars, match_radius);
    r.true_positives += m.true_positives;
    r.false_positives += m.false_positives;
    r.false_negatives += m.false_negatives;
    r.max_center_error = std::max(r.max_center_error, m.max_center_error);
    ++r.frames;
  }
  const int detected = r.true_positives + r.false_positives;
  const int expected = r.true_positives + r.false_negatives;
  if (detected > 0) r.precision = static_cast<double>(r.true_positives) / detected;
  if (expected > 0) r.recall = static_cast<double>(r.true_positives) / expected;
  r.latency = latency_stats(std::move(times));
  return r;
}

}  // namespace herodet
