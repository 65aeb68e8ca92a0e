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

#include <algorithm>
#include <random>

#include "herodet/nms.h"
#include "oracles.h"

namespace herodet {
namespace {

std::vector<PeakCandidate> make(std::initializer_list<std::array<double, 3>> pts) {
  std::vector<PeakCandidate> out;
  for (const auto& p : pts) {
    out.push_back({static_cast<int>(p[0]), static_cast<int>(p[1]), 0.0f, p[2],
                   true});
  }
  return out;
}

TEST(NmsTest, SameRowNeighbourIsSuppressed) {
  const auto kept = suppress(make({{100, 50, 5}, {110, 50, 4}}), {33, 1});
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].x, 100);
}

TEST(NmsTest, OffsetsAreStrict) {
  // |dx| == t_x or |dy| == t_y is not close enough.
  EXPECT_EQ(suppress(make({{100, 50, 5}, {133, 50, 4}}), {33, 1}).size(), 2u);
  EXPECT_EQ(suppress(make({{100, 50, 5}, {100, 51, 4}}), {33, 1}).size(), 2u);
  EXPECT_EQ(suppress(make({{100, 50, 5}, {132, 50, 4}}), {33, 1}).size(), 1u);
}

TEST(NmsTest, SuppressedCandidatesDoNotSuppress) {
  // B is suppressed by A; C is near B but not A, so it survives.
  const auto kept =
      suppress(make({{0, 0, 3}, {20, 0, 2}, {45, 0, 1}}), {33, 1});
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].x, 0);
  EXPECT_EQ(kept[1].x, 45);
}

TEST(NmsTest, EmptyAndSingleInputs) {
  EXPECT_TRUE(suppress({}, {}).empty());
  EXPECT_EQ(suppress(make({{1, 1, 1}}), {}).size(), 1u);
}

TEST(NmsTest, RejectsUnsortedInputAndNegativeThresholds) {
  EXPECT_THROW(suppress(make({{0, 0, 1}, {50, 50, 2}}), {}), std::invalid_argument);
  EXPECT_THROW(suppress(make({{0, 0, 1}}), {-1, 1}), std::invalid_argument);
}

TEST(NmsTest, DefaultsFollowTemplateWidth) {
  EXPECT_EQ(NmsParams::for_template({66, 12}).t_x, 33);
  EXPECT_EQ(NmsParams::for_template({66, 12}).t_y, 1);
  EXPECT_EQ(NmsParams::for_template({41, 9}).t_x, 20);
}

TEST(NmsTest, AgreesWithDirectLoopOnRandomSets) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(rng() % 21);
    std::vector<oracle::NmsPoint> pts;
    for (int i = 0; i < n; ++i) {
      pts.push_back({static_cast<int>(rng() % 80), static_cast<int>(rng() % 4),
                     static_cast<double>(rng() % 50), true});
    }
    std::stable_sort(pts.begin(), pts.end(),
                     [](auto& a, auto& b) { return a.score > b.score; });
    std::vector<PeakCandidate> cands;
    for (const auto& p : pts) cands.push_back({p.x, p.y, 0.0f, p.score, true});
    const int tx = 1 + static_cast<int>(rng() % 40);
    const int ty = 1 + static_cast<int>(rng() % 3);
    const auto got = suppress(cands, {tx, ty});
    const auto want = oracle::suppression_loop(pts, tx, ty);
    ASSERT_EQ(got.size(), want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].x, want[i].x);
      EXPECT_EQ(got[i].y, want[i].y);
      EXPECT_EQ(got[i].score, want[i].score);
      EXPECT_TRUE(got[i].is_real_detection);
    }
  }
}

}  // namespace
}  // namespace herodet
