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

// Procedural game-frame renderer with exact ground truth. Scenes are laid out
// at the normalized 720-row height and resampled to the requested output
// size, so every coordinate in a SceneSpec is in normalized pixels while
// GroundTruth reports output-image pixels.

#ifndef HERODET_SYNTH_H_
#define HERODET_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "herodet/camp.h"
#include "herodet/detector.h"
#include "herodet/image.h"
#include "herodet/roi.h"

namespace herodet::synth {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi]. Defined here rather than through
// std::uniform_int_distribution so renders are identical across standard
// libraries.
int uniform_int(Rng& rng, int lo, int hi);
double uniform_real(Rng& rng, double lo, double hi);

// Stable 64-bit FNV-1a, used to derive per-label generators.
uint64_t fnv1a(std::string_view s);

// Twenty stock hero names used by the generators.
const std::vector<std::string>& stock_labels();

inline constexpr Rgb kSelfColor{40, 200, 60};
inline constexpr Rgb kFriendColor{50, 120, 230};
inline constexpr Rgb kEnemyColor{220, 50, 45};
inline constexpr Rgb kEmptyColor{85, 85, 85};
Rgb camp_color(Camp camp);

enum class Background { kSolid, kNoise, kTextured, kShop };
std::string_view background_name(Background b);

struct BarSpec {
  int x = 0;  // top-left, normalized coordinates
  int y = 0;
  Camp camp = Camp::kEnemy;
  double fill = 1.0;  // fraction of the fill area in camp color
  int level = 1;      // 1..15, drawn in the level box
};

struct SpriteSpec {
  std::string label;
  int x = 0;  // top-left of the sprite box, normalized coordinates
  int y = 0;
};

inline constexpr int kSpriteSize = 120;

struct SceneSpec {
  Size dims{1280, 720};  // output size
  std::vector<BarSpec> bars;
  std::vector<SpriteSpec> sprites;
  Background background = Background::kNoise;
  // Label whose skill wheel is drawn at the skill-region position.
  std::optional<std::string> hud_label;
  int occluders = 0;  // random rectangles dropped over sprites
  uint64_t seed = 0;
};

// Layout size of a scene: normalized height, proportional width.
Size layout_size(Size dims);

struct TruthBar {
  BoxF rect;  // output-image coordinates
  Camp camp = Camp::kEnemy;
  double fill = 1.0;
  int level = 1;
};

struct TruthSprite {
  std::string label;
  BoxF rect;
};

struct GroundTruth {
  std::vector<TruthBar> bars;
  std::vector<TruthSprite> sprites;
  std::optional<BoxF> skill_region;
  std::optional<Circle> first_skill;  // output-image coordinates
  std::vector<std::string> warnings;
};

struct RenderedScene {
  Image image;  // RGB
  GroundTruth truth;
};

// Deterministic for a fixed spec. Throws std::invalid_argument when a bar
// leaves the layout, fill is outside [0, 1] or level outside [1, 15].
// Bars closer than the suppression distances are drawn but flagged in
// GroundTruth::warnings.
RenderedScene render(const SceneSpec& spec);

// Skill-wheel geometry relative to the skill region's top-left. The first
// skill is the largest button and sits in the lower-left quadrant.
struct SkillButton {
  int cx;
  int cy;
  int r;
};
std::vector<SkillButton> skill_wheel_layout(int region_side);

struct Glyph {
  Image rgb;
  Image alpha;  // 1 channel, 0 or 255
};
// Procedural per-label glyph; the same label always yields the same pixels.
Glyph sprite_glyph(std::string_view label, int side);

// Drawing helpers shared with tests.
void draw_disk(Image& img, double cx, double cy, double r, Rgb color);
void draw_ring(Image& img, double cx, double cy, double r, double thickness,
               Rgb color);
void blend_glyph(Image& img, const Glyph& glyph, int x, int y);
void add_uniform_noise(Image& img, Rng& rng, int amplitude);

struct SceneOptions {
  int min_bars = 0;
  int max_bars = 10;
  bool empty_bars_only = false;
  double self_probability = 0.7;
  double empty_probability = 0.1;
  std::vector<std::string> labels = stock_labels();
  // Fixed leading-hero label, as in frames sampled from one player's video.
  std::optional<std::string> self_label;
};

// Random hero layout on a slot grid that keeps bars at least one template
// width apart and sprites clear of the skill wheel.
SceneSpec random_scene(Rng& rng, Size dims, const SceneOptions& options = {});

// Horizontal-line clutter in the style of an in-game shop screen, with no
// blood bars.
SceneSpec shop_scene(uint64_t seed, Size dims = {1280, 720});

// 163x163 appearance crop of `label` on a random background, jittered,
// noised and optionally occluded: a training or test sample for
// appearance classifiers.
Image sprite_sample(std::string_view label, Rng& rng, bool occlude);

struct CorpusOptions {
  int count = 200;
  uint64_t seed = 1;
  std::vector<Size> dims = {{1280, 720}, {960, 720}, {1560, 720}, {1920, 1080}};
  SceneOptions scene;
  int jobs = 1;
};

struct CorpusEntry {
  std::string file;  // relative to the corpus root
  Size dims;
  uint64_t seed = 0;
  std::string background;
  GroundTruth truth;
};

struct Manifest {
  int schema = 1;
  uint64_t seed = 0;
  std::vector<CorpusEntry> frames;
};

// Writes `frames/NNNN.png` and `manifest.json` under `root`.
Manifest render_corpus(const std::filesystem::path& root,
                       const CorpusOptions& options);

void save_manifest(const std::filesystem::path& path, const Manifest& m);
// Throws std::runtime_error on unreadable or malformed manifests.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace herodet::synth

#endif  // HERODET_SYNTH_H_
