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

#include <cmath>
#include <random>

#include "herodet/roi.h"
#include "herodet/synth.h"
#include "oracles.h"

namespace herodet {
namespace {

TEST(SkillRegionTest, SixteenByNineReference) {
  EXPECT_EQ(skill_region_rect({1280, 720}), (Rect{880, 342, 360, 360}));
}

TEST(SkillRegionTest, OtherAspectRatiosFollowClosedForm) {
  // 4:3 at 720 rows: 480 + 0.1875 * 1280 = 720, past the right edge by
  // 120, so the box is shifted left.
  EXPECT_NEAR(skill_region_exact({960, 720}).x, 720.0, 1e-9);
  EXPECT_EQ(skill_region_rect({960, 720}), (Rect{600, 342, 360, 360}));
  // 19.5:9 at 720 rows: 780 + 240 = 1020.
  EXPECT_EQ(skill_region_rect({1560, 720}), (Rect{1020, 342, 360, 360}));
}

TEST(SkillRegionTest, RandomFramesWithinOnePixelOfClosedForm) {
  std::mt19937 rng(21);
  for (int i = 0; i < 50; ++i) {
    const int h = 300 + static_cast<int>(rng() % 1200);
    const double aspect = 1.3 + (rng() % 1000) / 1000.0;
    const int w = static_cast<int>(h * aspect);
    const Rect r = skill_region_rect({w, h});
    const auto want = oracle::skill_region_closed_form(w, h);
    const RectF exact = skill_region_exact({w, h});
    EXPECT_NEAR(exact.x, want.x, 1e-9);
    EXPECT_NEAR(r.y, want.y, 1.0);
    EXPECT_NEAR(r.w, want.side, 1.0);
    if (want.x + want.side <= w) EXPECT_NEAR(r.x, want.x, 1.0);
    EXPECT_TRUE(Rect({0, 0, w, h}).contains(r));
  }
}

TEST(SkillRegionTest, NarrowFramesAreShiftedInside) {
  // 1:1 frames put the closed-form box past the right edge.
  const Rect r = skill_region_rect({720, 720});
  EXPECT_EQ(r.right(), 720);
  EXPECT_EQ(r.w, 360);
}

TEST(AppearanceRectTest, CenteredBelowTheBar) {
  const Rect r = appearance_rect(400, 100, {66, 12}, {1280, 720});
  EXPECT_EQ(r, (Rect{433 - 81, 120, 163, 163}));
  EXPECT_EQ(r.x + r.w / 2, 400 + 33);
}

TEST(AppearanceRectTest, ShiftedInsideNearBorders) {
  const Rect left = appearance_rect(0, 600, {66, 12}, {1280, 720});
  EXPECT_EQ(left.x, 0);
  EXPECT_EQ(left.bottom(), 720);
  EXPECT_EQ(left.w, 163);
  const Rect tiny = shift_inside({-5, -5, 400, 50}, {100, 100});
  EXPECT_EQ(tiny, (Rect{0, 0, 100, 50}));
}

TEST(FirstSkillTest, SearchAreaIsLowerLeftQuadrant) {
  EXPECT_EQ(first_skill_search_area({360, 360}), (Rect{0, 180, 180, 180}));
  EXPECT_EQ(first_skill_search_area({361, 361}), (Rect{0, 180, 180, 181}));
}

TEST(FirstSkillTest, CropCentersOnLargestCircle) {
  const std::vector<Circle> circles = {{200, 100, 36, 50}, {90, 270, 48, 40}};
  const auto r = first_skill_rect({360, 360}, circles);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, (Rect{35, 215, 110, 110}));
  EXPECT_FALSE(first_skill_rect({360, 360}, {}).has_value());
  const auto edge = first_skill_rect({360, 360}, {{10, 350, 40, 1}});
  EXPECT_EQ(*edge, (Rect{0, 250, 110, 110}));
}

TEST(CircleTest, RecoversRenderedRings) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    Image img(180, 180, 1);
    img.fill({150, 150, 150});
    const double r = 32 + static_cast<int>(rng() % 36);
    const double cx = 80 + static_cast<int>(rng() % 20);
    const double cy = 80 + static_cast<int>(rng() % 20);
    oracle::draw_ring(img, cx, cy, r, 3.0, 20);
    const auto circles = detect_circles(img, 30, 70);
    ASSERT_FALSE(circles.empty()) << "trial " << trial;
    EXPECT_NEAR(circles[0].cx, cx, 1.0);
    EXPECT_NEAR(circles[0].cy, cy, 1.0);
    EXPECT_NEAR(circles[0].r, r, 1.5);
  }
}

TEST(CircleTest, SortedByRadiusDescending) {
  Image img(360, 200, 1);
  img.fill({200, 200, 200});
  oracle::draw_ring(img, 90, 100, 40, 3.0, 30);
  oracle::draw_ring(img, 260, 100, 60, 3.0, 30);
  const auto circles = detect_circles(img, 30, 70);
  ASSERT_GE(circles.size(), 2u);
  EXPECT_NEAR(circles[0].r, 60, 1.5);
  EXPECT_NEAR(circles[1].r, 40, 1.5);
}

TEST(CircleTest, BlankAndNoisyImagesHaveNoCircles) {
  Image blank(180, 180, 1);
  blank.fill({90, 90, 90});
  EXPECT_TRUE(detect_circles(blank, 30, 70).empty());
  synth::Rng rng(5);
  Image noisy = blank;
  synth::add_uniform_noise(noisy, rng, 8);
  EXPECT_TRUE(detect_circles(noisy, 30, 70).empty());
}

TEST(CircleTest, RejectsBadParameters) {
  Image img(50, 50, 1);
  EXPECT_THROW(detect_circles(img, 0, 10), std::invalid_argument);
  EXPECT_THROW(detect_circles(img, 20, 20), std::invalid_argument);
  EXPECT_THROW(detect_circles(Image(50, 50, 3), 10, 20), std::invalid_argument);
}

TEST(CircleTest, FindsFirstSkillOfRenderedWheel) {
  for (Size dims : {Size{1280, 720}, Size{960, 720}, Size{1920, 1080}}) {
    synth::SceneSpec spec;
    spec.dims = dims;
    spec.hud_label = "daji";
    spec.background = synth::Background::kTextured;
    spec.seed = 12;
    const synth::RenderedScene scene = synth::render(spec);
    const NormalizedFrame nf = normalize_height(scene.image);
    const Rect region = skill_region_rect(nf.image.size());
    const Image skill = crop(nf.image, region).image;
    const Rect search = first_skill_search_area(skill.size());
    const auto circles =
        detect_circles(to_grayscale(crop(skill, search).image), 30, 70);
    ASSERT_FALSE(circles.empty());
    const Circle& truth = *scene.truth.first_skill;
    EXPECT_NEAR((circles[0].cx + search.x + region.x) / nf.scale, truth.cx,
                1.5 / nf.scale);
    EXPECT_NEAR((circles[0].cy + search.y + region.y) / nf.scale, truth.cy,
                1.5 / nf.scale);
    EXPECT_NEAR(circles[0].r / nf.scale, truth.r, 2.0 / nf.scale);
  }
}

}  // namespace
}  // namespace herodet
