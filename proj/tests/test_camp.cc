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

#include "herodet/camp.h"
#include "oracles.h"

namespace herodet {
namespace {

TEST(CampTest, DominantChannelPicksCamp) {
  EXPECT_EQ(classify_camp(220, 50, 45).camp, Camp::kEnemy);
  EXPECT_EQ(classify_camp(40, 200, 60).camp, Camp::kSelf);
  EXPECT_EQ(classify_camp(50, 120, 230).camp, Camp::kFriend);
}

TEST(CampTest, DominanceNeedsStrictlyMoreThanHundredAndOneAndAHalf) {
  EXPECT_TRUE(classify_camp(100, 10, 10).rejected());
  EXPECT_EQ(classify_camp(101, 10, 10).camp, Camp::kEnemy);
  EXPECT_TRUE(classify_camp(150, 100, 10).rejected());
  EXPECT_EQ(classify_camp(150.01, 100, 10).camp, Camp::kEnemy);
}

TEST(CampTest, MidGrayIsAnEmptyBarInclusive) {
  EXPECT_EQ(classify_camp(85, 85, 85).camp, Camp::kUnknown);
  EXPECT_EQ(classify_camp(70, 100, 70).camp, Camp::kUnknown);
  EXPECT_TRUE(classify_camp(69.9, 85, 85).rejected());
  EXPECT_TRUE(classify_camp(85, 100.1, 85).rejected());
}

TEST(CampTest, OtherColorsAreFalseDetections) {
  EXPECT_TRUE(classify_camp(200, 200, 200).rejected());
  EXPECT_TRUE(classify_camp(10, 10, 10).rejected());
  EXPECT_TRUE(classify_camp(160, 140, 120).rejected());
}

TEST(CampTest, CoarseGridMatchesRuleTranscription) {
  for (int r = 0; r <= 255; r += 5) {
    for (int g = 0; g <= 255; g += 5) {
      for (int b = 0; b <= 255; b += 5) {
        const auto want = oracle::expected_camp(oracle::camp_rules(r, g, b));
        ASSERT_EQ(classify_camp(r, g, b).camp, want) << r << "," << g << "," << b;
      }
    }
  }
}

TEST(CampTest, NamesRoundTrip) {
  for (Camp c : {Camp::kSelf, Camp::kFriend, Camp::kEnemy, Camp::kUnknown}) {
    EXPECT_EQ(parse_camp(camp_name(c)), c);
  }
  EXPECT_EQ(camp_name(Camp::kSelf), "self");
  EXPECT_FALSE(parse_camp("green").has_value());
}

TEST(CampTest, SampleRegionIsLeftStripOfFill) {
  const BloodBarTemplate t = BloodBarTemplate::standard();
  const Rect r = camp_sample_region(t, 4);
  EXPECT_EQ(r, (Rect{t.fill_region().x, t.fill_region().y, 4,
                     t.fill_region().h}));
  EXPECT_THROW(camp_sample_region(t, 0), std::invalid_argument);
}

TEST(CampTest, LeftmostMeanAveragesTheStrip) {
  Image frame(20, 10, 3);
  frame.fill({0, 0, 0});
  frame.fill_rect({4, 2, 2, 2}, {100, 200, 40});
  frame.fill_rect({6, 2, 2, 2}, {0, 0, 80});
  const MeanColor c = leftmost_mean_color(frame, 3, 1, {1, 1, 4, 2});
  EXPECT_DOUBLE_EQ(c.r, 50);
  EXPECT_DOUBLE_EQ(c.g, 100);
  EXPECT_DOUBLE_EQ(c.b, 60);
  EXPECT_THROW(leftmost_mean_color(frame, 18, 1, {1, 1, 4, 2}),
               std::out_of_range);
}

}  // namespace
}  // namespace herodet
