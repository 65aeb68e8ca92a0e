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


// Microbenchmarks for the detection stages on rendered 1280x720 frames.

#include <benchmark/benchmark.h>

#include "herodet/detector.h"
#include "herodet/nms.h"
#include "herodet/recognition.h"
#include "herodet/roi.h"
#include "herodet/synth.h"
#include "herodet/template_match.h"

namespace herodet {
namespace {

const Image& frame() {
  static const Image img = [] {
    synth::Rng rng(42);
    synth::SceneOptions opts;
    opts.min_bars = 6;
    return synth::render(synth::random_scene(rng, {1280, 720}, opts)).image;
  }();
  return img;
}

void BM_Grayscale(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(to_grayscale(frame()));
}
BENCHMARK(BM_Grayscale)->Unit(benchmark::kMillisecond);

void BM_MaskedMatch(benchmark::State& state) {
  const Image gray = to_grayscale(frame());
  const BloodBarTemplate tmpl = BloodBarTemplate::standard();
  for (auto _ : state) benchmark::DoNotOptimize(masked_match(gray, tmpl));
}
BENCHMARK(BM_MaskedMatch)->Unit(benchmark::kMillisecond);

void BM_MaximumFilter(benchmark::State& state) {
  const MatchMap map =
      masked_match(to_grayscale(frame()), BloodBarTemplate::standard());
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximum_filter(map, radius));
}
BENCHMARK(BM_MaximumFilter)->Arg(4)->Arg(12)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Suppress(benchmark::State& state) {
  synth::Rng rng(3);
  std::vector<PeakCandidate> cands;
  for (int i = 0; i < 20; ++i) {
    cands.push_back({synth::uniform_int(rng, 0, 1200),
                     synth::uniform_int(rng, 0, 700), 0.0f, 20.0 - i, true});
  }
  for (auto _ : state) benchmark::DoNotOptimize(suppress(cands, {}));
}
BENCHMARK(BM_Suppress);

void BM_DetectFrame(benchmark::State& state) {
  const Detector detector(BloodBarTemplate::standard());
  for (auto _ : state) benchmark::DoNotOptimize(detector.detect(frame()));
}
BENCHMARK(BM_DetectFrame)->Unit(benchmark::kMillisecond);

void BM_DetectCircles(benchmark::State& state) {
  synth::SceneSpec spec;
  spec.hud_label = "daji";
  const Image img = synth::render(spec).image;
  const Image region = to_grayscale(crop(img, skill_region_rect(img.size())).image);
  const Rect area = first_skill_search_area(region.size());
  const Image quadrant = crop(region, area).image;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_circles(quadrant, CircleParams{}));
  }
}
BENCHMARK(BM_DetectCircles)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace herodet

BENCHMARK_MAIN();
