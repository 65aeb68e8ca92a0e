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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "herodet/dataset.h"
#include "herodet/png_io.h"
#include "herodet/synth.h"

namespace herodet {
namespace {

namespace fs = std::filesystem;

class DatasetTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("herodet-dataset-" + std::to_string(::getpid()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_ / "frames");
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write_frame(const std::string& name, const synth::SceneSpec& spec) {
    const fs::path p = root_ / "frames" / (name + ".png");
    write_png(p, synth::render(spec).image);
    return p;
  }

  static const Detector& detector() {
    static const Detector d(BloodBarTemplate::standard());
    return d;
  }

  fs::path root_;
};

synth::SceneSpec leading_scene(uint64_t seed, bool with_self) {
  synth::Rng rng(seed);
  synth::SceneOptions opts;
  opts.min_bars = 2;
  opts.self_probability = with_self ? 1.0 : 0.0;
  opts.self_label = "daji";
  synth::SceneSpec spec = synth::random_scene(rng, {1280, 720}, opts);
  spec.hud_label = "daji";
  return spec;
}

TEST_F(DatasetTest, CentralWindowIsInclusiveOfItsBorders) {
  Detection d;
  d.bar = {607, 354, 66, 12};  // centered in 1280x720
  EXPECT_TRUE(in_central_window(d, {1280, 720}, 0.5, 0.6));
  d.bar.x = 320 - 33;  // center exactly on the left border
  EXPECT_TRUE(in_central_window(d, {1280, 720}, 0.5, 0.6));
  d.bar.x -= 1;
  EXPECT_FALSE(in_central_window(d, {1280, 720}, 0.5, 0.6));
  d.bar = {607, 144 - 6 - 1, 66, 12};
  EXPECT_FALSE(in_central_window(d, {1280, 720}, 0.5, 0.6));
  EXPECT_TRUE(in_central_window(d, {1280, 720}, 1.0, 1.0));
}

TEST_F(DatasetTest, GreenCenteredBarYieldsAllThreeCrops) {
  synth::SceneSpec spec;
  spec.hud_label = "daji";
  spec.bars = {{607, 215, Camp::kSelf, 0.7, 5}, {100, 60, Camp::kEnemy, 1.0, 2}};
  spec.sprites = {{"daji", 580, 256}};
  const std::vector<fs::path> frames = {write_frame("0001", spec)};
  const ExtractResult r =
      extract_leading_samples(detector(), frames, "daji", root_ / "out");
  EXPECT_TRUE(r.warnings.empty());
  ASSERT_EQ(r.records.size(), 3u);
  std::map<RoiType, SampleRecord> by_roi;
  for (const SampleRecord& s : r.records) by_roi[s.roi] = s;
  ASSERT_EQ(by_roi.size(), 3u);
  for (const auto& [roi, s] : by_roi) {
    EXPECT_EQ(s.label, "daji");
    EXPECT_EQ(s.frame_id, "0001");
    EXPECT_EQ(s.file, "daji/" + std::string(roi_name(roi)) + "/0001.png");
    const Image img = read_png(root_ / "out" / s.file);
    EXPECT_EQ(img.width(), roi_size(roi));
    EXPECT_EQ(img.height(), roi_size(roi));
    EXPECT_EQ(s.crop.w, roi_size(roi));
  }
  EXPECT_EQ(by_roi[RoiType::kAppearance].crop, (Rect{640 - 81, 235, 163, 163}));
  EXPECT_EQ(by_roi[RoiType::kSkillRegion].crop, (Rect{880, 342, 360, 360}));
  EXPECT_TRUE(std::is_sorted(r.records.begin(), r.records.end(),
                             [](const SampleRecord& a, const SampleRecord& b) {
                               return a.file < b.file;
                             }));
}

TEST_F(DatasetTest, NoWheelMeansNoFirstSkillCrop) {
  synth::SceneSpec spec;
  spec.background = synth::Background::kSolid;
  spec.bars = {{607, 215, Camp::kSelf, 0.7, 5}};
  const std::vector<fs::path> frames = {write_frame("0002", spec)};
  const ExtractResult r =
      extract_leading_samples(detector(), frames, "daji", root_ / "out");
  ASSERT_EQ(r.records.size(), 2u);
  for (const SampleRecord& s : r.records) EXPECT_NE(s.roi, RoiType::kFirstSkill);
}

TEST_F(DatasetTest, OtherCampsAndOffCenterBarsYieldNothing) {
  synth::SceneSpec enemies;
  enemies.hud_label = "daji";
  enemies.bars = {{607, 215, Camp::kEnemy, 0.7, 5}, {300, 200, Camp::kFriend, 1.0, 1}};
  synth::SceneSpec corner;
  corner.hud_label = "daji";
  corner.bars = {{40, 30, Camp::kSelf, 0.7, 5}};
  const std::vector<fs::path> frames = {write_frame("a", enemies),
                                        write_frame("b", corner)};
  const ExtractResult r =
      extract_leading_samples(detector(), frames, "daji", root_ / "out");
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST_F(DatasetTest, UnreadableFramesAreSkippedWithAWarning) {
  std::ofstream(root_ / "frames" / "bad.png") << "not a png";
  synth::SceneSpec spec;
  spec.bars = {{607, 215, Camp::kSelf, 0.7, 5}};
  const std::vector<fs::path> frames = {root_ / "frames" / "bad.png",
                                        root_ / "frames" / "missing.png",
                                        write_frame("good", spec)};
  const ExtractResult r =
      extract_leading_samples(detector(), frames, "daji", root_ / "out");
  EXPECT_EQ(r.warnings.size(), 2u);
  EXPECT_EQ(r.records.size(), 2u);
  EXPECT_THROW(extract_leading_samples(detector(), frames, "a/b", root_ / "out"),
               std::invalid_argument);
}

TEST_F(DatasetTest, RenderedVideoYieldsOneAppearanceSamplePerLeadingFrame) {
  std::vector<fs::path> frames;
  int with_self = 0;
  for (int i = 0; i < 40; ++i) {
    const bool self = i % 10 != 3;
    const synth::SceneSpec spec = leading_scene(100 + i, self);
    for (const auto& b : spec.bars) with_self += b.camp == Camp::kSelf;
    char name[16];
    std::snprintf(name, sizeof(name), "%04d", i);
    frames.push_back(write_frame(name, spec));
  }
  ASSERT_EQ(with_self, 36);
  ExtractOptions opts;
  opts.jobs = 4;
  const ExtractResult r =
      extract_leading_samples(detector(), frames, "daji", root_ / "out", opts);
  std::map<RoiType, int> counts;
  for (const SampleRecord& s : r.records) ++counts[s.roi];
  EXPECT_EQ(counts[RoiType::kAppearance], 36);
  EXPECT_EQ(counts[RoiType::kSkillRegion], 36);
  EXPECT_EQ(counts[RoiType::kFirstSkill], 36);

  // The job count does not change the result.
  opts.jobs = 1;
  const ExtractResult serial =
      extract_leading_samples(detector(), frames, "daji", root_ / "serial", opts);
  EXPECT_EQ(serial.records, r.records);
}

TEST_F(DatasetTest, ManifestMergesAndRoundTrips) {
  const fs::path out = root_ / "samples";
  std::vector<SampleRecord> first = {
      {RoiType::kAppearance, "daji", "0001", {1, 2, 163, 163}, "daji/appearance/0001.png"},
      {RoiType::kSkillRegion, "daji", "0001", {880, 342, 360, 360},
       "daji/skill_region/0001.png"}};
  save_samples_manifest(out, first);
  std::vector<SampleRecord> second = {
      {RoiType::kAppearance, "houyi", "0007", {5, 6, 163, 163},
       "houyi/appearance/0007.png"},
      // Re-extracting a frame replaces its record.
      {RoiType::kAppearance, "daji", "0001", {9, 9, 163, 163},
       "daji/appearance/0001.png"}};
  save_samples_manifest(out, second);
  const std::vector<SampleRecord> loaded = load_samples_manifest(out);
  ASSERT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded[0].file, "daji/appearance/0001.png");
  EXPECT_EQ(loaded[0].crop, (Rect{9, 9, 163, 163}));
  EXPECT_EQ(loaded[1], first[1]);
  EXPECT_EQ(loaded[2], second[0]);

  EXPECT_THROW(load_samples_manifest(root_ / "nowhere"), std::runtime_error);
  fs::create_directories(root_ / "broken");
  std::ofstream(root_ / "broken" / "samples_manifest.json") << "{";
  EXPECT_THROW(load_samples_manifest(root_ / "broken"), std::runtime_error);
}

std::vector<SampleRecord> records_for(const std::map<std::string, int>& counts) {
  std::vector<SampleRecord> out;
  for (const auto& [label, n] : counts) {
    for (int i = 0; i < n; ++i) {
      SampleRecord r;
      r.label = label;
      r.frame_id = std::to_string(i);
      r.file = label + "/appearance/" + r.frame_id + ".png";
      out.push_back(r);
    }
  }
  return out;
}

std::set<std::string> files(const std::vector<SampleRecord>& v) {
  std::set<std::string> out;
  for (const auto& r : v) out.insert(r.file);
  return out;
}

TEST(SplitTest, TenPerLabelSplitsEightTwo) {
  const auto records = records_for({{"a", 10}, {"b", 10}, {"c", 10}});
  const Split s = split_corpus(records, 0.8, 7);
  std::map<std::string, int> train, test;
  for (const auto& r : s.train) ++train[r.label];
  for (const auto& r : s.test) ++test[r.label];
  for (const std::string l : {"a", "b", "c"}) {
    EXPECT_EQ(train[l], 8);
    EXPECT_EQ(test[l], 2);
  }
  EXPECT_TRUE(s.warnings.empty());
}

TEST(SplitTest, IsADeterministicPartition) {
  auto records = records_for({{"a", 13}, {"b", 7}, {"c", 2}, {"d", 31}});
  const Split s1 = split_corpus(records, 0.7, 99);
  const Split s2 = split_corpus(records, 0.7, 99);
  EXPECT_EQ(s1.train, s2.train);
  EXPECT_EQ(s1.test, s2.test);

  // Input order does not matter.
  std::reverse(records.begin(), records.end());
  const Split s3 = split_corpus(records, 0.7, 99);
  EXPECT_EQ(files(s3.train), files(s1.train));

  const auto train = files(s1.train), test = files(s1.test);
  EXPECT_EQ(train.size() + test.size(), records.size());
  for (const auto& f : test) EXPECT_FALSE(train.contains(f));

  const Split other = split_corpus(records, 0.7, 100);
  EXPECT_NE(files(other.test), test);
}

TEST(SplitTest, SingletonLabelsGoToTrainWithAWarning) {
  const auto records = records_for({{"solo", 1}, {"pair", 2}});
  const Split s = split_corpus(records, 0.9, 1);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("solo"), std::string::npos);
  // Labels with at least two records keep one on each side.
  std::map<std::string, int> test;
  for (const auto& r : s.test) ++test[r.label];
  EXPECT_EQ(test["pair"], 1);
  EXPECT_EQ(test["solo"], 0);
  EXPECT_EQ(s.train.size(), 2u);
}

TEST(SplitTest, RejectsEmptyInputAndBadFractions) {
  EXPECT_THROW(split_corpus({}, 0.8, 1), std::invalid_argument);
  const auto records = records_for({{"a", 4}});
  EXPECT_THROW(split_corpus(records, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(split_corpus(records, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(split_corpus(records, -0.5, 1), std::invalid_argument);
}

TEST(SplitTest, ReproducesTheAppearanceTrainTestRatio) {
  // 134,659 appearance samples split 100,000 / 34,659.
  const auto records = records_for({{"all", 134659}});
  const Split s = split_corpus(records, 100000.0 / 134659.0, 3);
  EXPECT_EQ(s.train.size(), 100000u);
  EXPECT_EQ(s.test.size(), 34659u);
}

}  // namespace
}  // namespace herodet
