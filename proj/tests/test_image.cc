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

#include <filesystem>
#include <random>

#include <unistd.h>

#include "herodet/image.h"
#include "herodet/png_io.h"
#include "oracles.h"

namespace herodet {
namespace {

MatchMap random_map(std::mt19937& rng, int w, int h, int levels) {
  std::uniform_int_distribution<int> d(0, levels - 1);
  MatchMap m(w, h);
  for (float& v : m.values()) v = static_cast<float>(d(rng)) / levels;
  return m;
}

TEST(ImageTest, ConstructorRejectsBadShapes) {
  EXPECT_THROW(Image(0, 4, 3), std::invalid_argument);
  EXPECT_THROW(Image(4, -1, 1), std::invalid_argument);
  EXPECT_THROW(Image(4, 4, 2), std::invalid_argument);
  EXPECT_THROW(Image(2, 2, 1, std::vector<uint8_t>(3)), std::invalid_argument);
}

TEST(ImageTest, GrayscaleUsesBt601Weights) {
  Image img(3, 1, 3);
  img.set_rgb(0, 0, {255, 0, 0});
  img.set_rgb(1, 0, {0, 255, 0});
  img.set_rgb(2, 0, {10, 20, 30});
  const Image g = to_grayscale(img);
  ASSERT_EQ(g.channels(), 1);
  EXPECT_EQ(g.at(0, 0), 76);   // round(0.299 * 255)
  EXPECT_EQ(g.at(1, 0), 150);  // round(0.587 * 255)
  EXPECT_EQ(g.at(2, 0), 18);   // round(2.99 + 11.74 + 3.42)
}

TEST(ImageTest, GrayscaleOfGrayIsIdentity) {
  Image g(5, 4, 1);
  g.at(2, 3) = 77;
  EXPECT_EQ(to_grayscale(g), g);
}

TEST(ImageTest, ResizeKeepsConstantImagesConstant) {
  Image img(17, 9, 3);
  img.fill({12, 200, 99});
  const Image r = resize_bilinear(img, 40, 23);
  ASSERT_EQ(r.size(), (Size{40, 23}));
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) EXPECT_EQ(r.rgb(x, y), (Rgb{12, 200, 99}));
  }
}

TEST(ImageTest, ResizeDownByTwoAveragesPixelPairs) {
  Image img(4, 2, 1, {0, 100, 50, 50, 0, 100, 50, 50});
  const Image r = resize_bilinear(img, 2, 1);
  // Centers of output pixels fall midway between source pixel pairs.
  EXPECT_EQ(r.at(0, 0), 50);
  EXPECT_EQ(r.at(1, 0), 50);
}

TEST(ImageTest, NormalizeHeightMapsToSevenTwenty) {
  Image img(1920, 1080, 3);
  const NormalizedFrame nf = normalize_height(img);
  EXPECT_EQ(nf.image.size(), (Size{1280, 720}));
  EXPECT_DOUBLE_EQ(nf.scale, 720.0 / 1080.0);

  Image already(960, 720, 1);
  already.at(5, 5) = 9;
  const NormalizedFrame same = normalize_height(already);
  EXPECT_EQ(same.scale, 1.0);
  EXPECT_EQ(same.image, already);
  EXPECT_THROW(normalize_height(Image{}), std::invalid_argument);
}

TEST(ImageTest, CropClampsToImageAndRejectsDisjointRects) {
  Image img(10, 8, 1);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 10; ++x) img.at(x, y) = static_cast<uint8_t>(10 * y + x);
  }
  const CropResult c = crop(img, {7, 5, 6, 6});
  EXPECT_EQ(c.actual, (Rect{7, 5, 3, 3}));
  EXPECT_EQ(c.image.at(0, 0), 57);
  EXPECT_EQ(c.image.at(2, 2), 79);
  EXPECT_THROW(crop(img, {20, 0, 3, 3}), std::invalid_argument);
}

TEST(ImageTest, PasteClipsAtBorders) {
  Image dst(4, 4, 1);
  Image src(3, 3, 1);
  src.fill({9, 9, 9});
  paste(dst, src, 2, -1);
  EXPECT_EQ(dst.at(2, 0), 9);
  EXPECT_EQ(dst.at(3, 1), 9);
  EXPECT_EQ(dst.at(3, 2), 0);
  EXPECT_EQ(dst.at(1, 0), 0);
}

TEST(MaximumFilterTest, MatchesNaiveWindowMax) {
  std::mt19937 rng(5);
  for (int radius : {1, 2, 3, 7, 12, 40}) {
    for (int trial = 0; trial < 4; ++trial) {
      const MatchMap m = random_map(rng, 23 + trial * 9, 17 + trial * 5, 50);
      EXPECT_EQ(maximum_filter(m, radius), oracle::max_filter(m, radius))
          << "radius " << radius;
    }
  }
}

TEST(MaximumFilterTest, DominatesInputAndComposesAsDilation) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const MatchMap m = random_map(rng, 31, 26, 1000);
    const int r = 1 + trial % 4;
    const MatchMap once = maximum_filter(m, r);
    for (size_t i = 0; i < m.values().size(); ++i) {
      EXPECT_GE(once.values()[i], m.values()[i]);
    }
    // Clipped square windows compose exactly, borders included.
    EXPECT_EQ(maximum_filter(once, r), maximum_filter(m, 2 * r));
  }
}

TEST(ImageTest, NormalizeHeightIsIdempotent) {
  Image img(1000, 600, 3);
  std::mt19937 rng(2);
  for (uint8_t& v : img.pixels()) v = static_cast<uint8_t>(rng());
  const NormalizedFrame once = normalize_height(img);
  EXPECT_EQ(once.image.size(), (Size{1200, 720}));
  const NormalizedFrame twice = normalize_height(once.image);
  EXPECT_EQ(twice.image, once.image);
  EXPECT_EQ(twice.scale, 1.0);
  EXPECT_THROW(normalize_height(img, 0), std::invalid_argument);
}

TEST(MaximumFilterTest, RejectsRadiusBelowOne) {
  std::mt19937 rng(9);
  const MatchMap m = random_map(rng, 8, 6, 10);
  EXPECT_THROW(maximum_filter(m, 0), std::invalid_argument);
  EXPECT_THROW(maximum_filter(m, -3), std::invalid_argument);
}

TEST(MaximumFilterTest, HandlesSingleRowAndColumn) {
  std::mt19937 rng(1);
  for (const auto& [w, h] : {std::pair{1, 30}, std::pair{30, 1}, std::pair{1, 1}}) {
    const MatchMap m = random_map(rng, w, h, 100);
    EXPECT_EQ(maximum_filter(m, 4), oracle::max_filter(m, 4));
  }
}

class PngTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("herodet_png_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(PngTest, RoundTripsGrayAndRgb) {
  std::mt19937 rng(3);
  for (int ch : {1, 3}) {
    Image img(13, 7, ch);
    for (uint8_t& v : img.pixels()) v = static_cast<uint8_t>(rng());
    const auto path = dir_ / ("img" + std::to_string(ch) + ".png");
    write_png(path, img);
    EXPECT_EQ(read_png(path), img);
  }
}

TEST_F(PngTest, MissingOrCorruptFilesThrow) {
  EXPECT_THROW(read_png(dir_ / "nope.png"), std::runtime_error);
  const auto bad = dir_ / "bad.png";
  std::FILE* f = std::fopen(bad.c_str(), "wb");
  std::fputs("not a png at all", f);
  std::fclose(f);
  EXPECT_THROW(read_png(bad), std::runtime_error);
}

}  // namespace
}  // namespace herodet
