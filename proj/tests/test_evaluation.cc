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


#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "herodet/evaluation.h"

namespace herodet {
namespace {

namespace fs = std::filesystem;

synth::TruthBar truth(double x, double y, Camp camp) {
  return {{x, y, 66, 12}, camp, 1.0, 1};
}

SourceDetection det(double x, double y, Camp camp) {
  return {{x, y, 66, 12}, camp, 5.0};
}

TEST(MatchTest, CountsHitsMissesAndFalseAlarms) {
  const std::vector<synth::TruthBar> gt = {truth(100, 100, Camp::kEnemy),
                                           truth(400, 100, Camp::kFriend)};
  const std::vector<SourceDetection> dets = {det(101, 100, Camp::kEnemy),
                                             det(700, 300, Camp::kEnemy)};
  const FrameMatch m = match_detections(dets, gt, 2.0);
  EXPECT_EQ(m.true_positives, 1);
  EXPECT_EQ(m.false_positives, 1);
  EXPECT_EQ(m.false_negatives, 1);
  EXPECT_DOUBLE_EQ(m.max_center_error, 1.0);
}

TEST(MatchTest, CampMustAgreeAndRadiusIsInclusive) {
  const std::vector<synth::TruthBar> gt = {truth(100, 100, Camp::kEnemy)};
  EXPECT_EQ(match_detections(std::vector{det(100, 100, Camp::kFriend)}, gt, 2)
                .true_positives,
            0);
  EXPECT_EQ(match_detections(std::vector{det(102, 100, Camp::kEnemy)}, gt, 2)
                .true_positives,
            1);
  EXPECT_EQ(match_detections(std::vector{det(102, 101, Camp::kEnemy)}, gt, 2)
                .true_positives,
            0);
}

TEST(MatchTest, EachTruthMatchesAtMostOnceClosestFirst) {
  const std::vector<synth::TruthBar> gt = {truth(100, 100, Camp::kSelf),
                                           truth(103, 100, Camp::kSelf)};
  // The detection at 102 is closest to the second bar; greedy matching
  // pairs it there and leaves the first bar for the detection at 100.
  const std::vector<SourceDetection> dets = {det(102, 100, Camp::kSelf),
                                             det(100, 100, Camp::kSelf),
                                             det(101, 100, Camp::kSelf)};
  const FrameMatch m = match_detections(dets, gt, 5.0);
  EXPECT_EQ(m.true_positives, 2);
  EXPECT_EQ(m.false_positives, 1);
  EXPECT_EQ(m.false_negatives, 0);
  EXPECT_DOUBLE_EQ(m.max_center_error, 1.0);
}

TEST(LatencyTest, NearestRankPercentiles) {
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  const LatencyStats s = latency_stats(v);
  EXPECT_DOUBLE_EQ(s.mean_ms, 50.5);
  EXPECT_DOUBLE_EQ(s.p50_ms, 50);
  EXPECT_DOUBLE_EQ(s.p90_ms, 90);
  EXPECT_DOUBLE_EQ(s.p99_ms, 99);
  EXPECT_DOUBLE_EQ(s.max_ms, 100);
  const LatencyStats one = latency_stats({7.0});
  EXPECT_DOUBLE_EQ(one.p50_ms, 7.0);
  EXPECT_DOUBLE_EQ(one.p99_ms, 7.0);
  EXPECT_THROW(latency_stats({}), std::invalid_argument);
}

TEST(ToSourceTest, MapsNormalizedRectsBack) {
  const BoxF b = to_source(Rect{60, 30, 66, 12}, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(b.x, 90);
  EXPECT_DOUBLE_EQ(b.y, 45);
  EXPECT_DOUBLE_EQ(b.w, 99);
  EXPECT_DOUBLE_EQ(b.h, 18);
}

class BenchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("herodet-eval-" + std::to_string(::getpid()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

TEST_F(BenchTest, SmallCorpusIsRecoveredExactly) {
  synth::CorpusOptions opts;
  opts.count = 10;
  opts.seed = 5;
  opts.jobs = 2;
  const synth::Manifest m = synth::render_corpus(root_, opts);
  int bars = 0;
  for (const auto& f : m.frames) bars += static_cast<int>(f.truth.bars.size());
  const Detector detector(BloodBarTemplate::standard());
  const BenchReport r = run_bench(root_, detector, 2.0);
  EXPECT_EQ(r.frames, 10);
  EXPECT_EQ(r.true_positives, bars);
  EXPECT_EQ(r.false_positives, 0);
  EXPECT_EQ(r.false_negatives, 0);
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_LE(r.max_center_error, 2.0);
  EXPECT_GT(r.latency.mean_ms, 0.0);
  EXPECT_LE(r.latency.p50_ms, r.latency.max_ms);
}

TEST_F(BenchTest, MissingOrEmptyManifestsThrow) {
  const Detector detector(BloodBarTemplate::standard());
  EXPECT_THROW(run_bench(root_, detector, 2.0), std::runtime_error);
  fs::create_directories(root_);
  synth::save_manifest(root_ / "manifest.json", synth::Manifest{});
  EXPECT_THROW(run_bench(root_, detector, 2.0), std::runtime_error);
}

}  // namespace
}  // namespace herodet
