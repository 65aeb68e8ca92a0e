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

#include "herodet/synth.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "herodet/png_io.h"
#include "herodet/template_match.h"
#include "json.hpp"

namespace herodet::synth {

int uniform_int(Rng& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

double uniform_real(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

const std::vector<std::string>& stock_labels() {
  static const std::vector<std::string> labels = {
      "anqila",  "baili",    "caocao",    "daji",    "diaochan",
      "gongsunli", "guanyu", "hanxin",    "houyi",   "libai",
      "lianpo",  "luban",    "lvbu",      "mozi",    "sunshangxiang",
      "xiangyu", "yase",     "zhaoyun",   "zhongkui", "zhuangzhou"};
  return labels;
}

Rgb camp_color(Camp camp) {
  switch (camp) {
    case Camp::kSelf:
      return kSelfColor;
    case Camp::kFriend:
      return kFriendColor;
    case Camp::kEnemy:
      return kEnemyColor;
    case Camp::kUnknown:
      return kEmptyColor;
  }
  return kEmptyColor;
}

std::string_view background_name(Background b) {
  switch (b) {
    case Background::kSolid:
      return "solid";
    case Background::kNoise:
      return "noise";
    case Background::kTextured:
      return "textured";
    case Background::kShop:
      return "shop";
  }
  return "solid";
}

Size layout_size(Size dims) {
  if (dims.width <= 0 || dims.height <= 0) {
    throw std::invalid_argument("scene dimensions must be positive");
  }
  if (dims.height == kNormalizedHeight) return dims;
  const double s = static_cast<double>(kNormalizedHeight) / dims.height;
  return {static_cast<int>(std::lround(dims.width * s)), kNormalizedHeight};
}

namespace {

// Scenery colors: every channel in [105, 235] and within 1.3x of the others.
// Any mix of such colors (blending, resampling, averaging) fails both camp
// rules, so scenery can never pass for a blood bar.
Rgb scenery_color(Rng& rng) {
  for (;;) {
    const double base = uniform_real(rng, 115.0, 215.0);
    int c[3];
    for (int& v : c) {
      v = static_cast<int>(std::lround(base * uniform_real(rng, 0.88, 1.12)));
      v = std::clamp(v, 105, 235);
    }
    const int lo = std::min({c[0], c[1], c[2]});
    const int hi = std::max({c[0], c[1], c[2]});
    if (hi <= 1.3 * lo) {
      return {static_cast<uint8_t>(c[0]), static_cast<uint8_t>(c[1]),
              static_cast<uint8_t>(c[2])};
    }
  }
}

// Sprite ink: scenery colors alternating with dark tones (every channel at
// most 60, too dark for either camp rule) for strong gray-level structure.
Rgb sprite_color(Rng& rng, int index) {
  if (index % 2 == 0) return scenery_color(rng);
  const int base = uniform_int(rng, 20, 50);
  return {static_cast<uint8_t>(base + uniform_int(rng, 0, 10)),
          static_cast<uint8_t>(base + uniform_int(rng, 0, 10)),
          static_cast<uint8_t>(base + uniform_int(rng, 0, 10))};
}

void fill_triangle(Image& img, double x0, double y0, double x1, double y1,
                   double x2, double y2, Rgb color) {
  const int minx = std::max(0, static_cast<int>(std::floor(std::min({x0, x1, x2}))));
  const int maxx = std::min(img.width() - 1,
                            static_cast<int>(std::ceil(std::max({x0, x1, x2}))));
  const int miny = std::max(0, static_cast<int>(std::floor(std::min({y0, y1, y2}))));
  const int maxy = std::min(img.height() - 1,
                            static_cast<int>(std::ceil(std::max({y0, y1, y2}))));
  auto edge = [](double ax, double ay, double bx, double by, double px,
                 double py) { return (bx - ax) * (py - ay) - (by - ay) * (px - ax); };
  const double area = edge(x0, y0, x1, y1, x2, y2);
  if (area == 0.0) return;
  for (int y = miny; y <= maxy; ++y) {
    for (int x = minx; x <= maxx; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      const double w0 = edge(x1, y1, x2, y2, px, py) / area;
      const double w1 = edge(x2, y2, x0, y0, px, py) / area;
      const double w2 = edge(x0, y0, x1, y1, px, py) / area;
      if (w0 >= 0 && w1 >= 0 && w2 >= 0) img.set_rgb(x, y, color);
    }
  }
}

void fill_ellipse(Image& img, double cx, double cy, double rx, double ry,
                  Rgb color) {
  const int minx = std::max(0, static_cast<int>(std::floor(cx - rx)));
  const int maxx = std::min(img.width() - 1, static_cast<int>(std::ceil(cx + rx)));
  const int miny = std::max(0, static_cast<int>(std::floor(cy - ry)));
  const int maxy = std::min(img.height() - 1, static_cast<int>(std::ceil(cy + ry)));
  for (int y = miny; y <= maxy; ++y) {
    for (int x = minx; x <= maxx; ++x) {
      const double dx = (x + 0.5 - cx) / rx;
      const double dy = (y + 0.5 - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) img.set_rgb(x, y, color);
    }
  }
}

// 3x5 digit bitmaps, one row per 3-bit group, most significant bit left.
constexpr uint16_t kDigits[10] = {
    0b111101101101111, 0b010110010010111, 0b111001111100111, 0b111001111001111,
    0b101101111001001, 0b111100111001111, 0b111100111101111, 0b111001001001001,
    0b111101111101111, 0b111101111001111};

void draw_digit(Image& img, int digit, int x, int y, Rgb color) {
  for (int row = 0; row < 5; ++row) {
    for (int col = 0; col < 3; ++col) {
      const int bit = 14 - (row * 3 + col);
      if ((kDigits[digit] >> bit) & 1) {
        const int px = x + col, py = y + row;
        if (px >= 0 && py >= 0 && px < img.width() && py < img.height()) {
          img.set_rgb(px, py, color);
        }
      }
    }
  }
}

void draw_bar(Image& img, const BarSpec& bar, Rng& rng) {
  const BarLayout& l = standard_bar_layout();
  const int w = l.size.width;
  const int h = l.size.height;
  const Rgb outline{l.outline, l.outline, l.outline};
  const Rgb frame{l.frame, l.frame, l.frame};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool edge = x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                        x == l.level_box.right();
      img.set_rgb(bar.x + x, bar.y + y, edge ? outline : frame);
    }
  }
  // Level box: dark plate with the level number. Its shade varies per bar;
  // the mask ignores it.
  const uint8_t plate = static_cast<uint8_t>(uniform_int(rng, 25, 60));
  img.fill_rect({bar.x + l.level_box.x, bar.y + l.level_box.y, l.level_box.w,
                 l.level_box.h},
                {plate, plate, static_cast<uint8_t>(plate + 20)});
  const Rgb ink{235, 230, 200};
  const int dy = bar.y + l.level_box.y + (l.level_box.h - 5) / 2;
  if (bar.level >= 10) {
    draw_digit(img, bar.level / 10, bar.x + l.level_box.x + 1, dy, ink);
    draw_digit(img, bar.level % 10, bar.x + l.level_box.x + 5, dy, ink);
  } else {
    draw_digit(img, bar.level, bar.x + l.level_box.x + 3, dy, ink);
  }
  // Fill area: camp color up to the fill fraction, depleted gray after it.
  const int filled = static_cast<int>(std::lround(bar.fill * l.fill.w));
  const Rgb color = camp_color(bar.camp);
  for (int x = 0; x < l.fill.w; ++x) {
    const Rgb c = x < filled ? color : kEmptyColor;
    for (int y = 0; y < l.fill.h; ++y) {
      img.set_rgb(bar.x + l.fill.x + x, bar.y + l.fill.y + y, c);
    }
  }
}

void draw_background(Image& img, Background kind, Rng& rng) {
  switch (kind) {
    case Background::kSolid:
      img.fill(scenery_color(rng));
      return;
    case Background::kNoise:
      img.fill(scenery_color(rng));
      add_uniform_noise(img, rng, 8);
      return;
    case Background::kTextured: {
      img.fill(scenery_color(rng));
      const int blobs = uniform_int(rng, 20, 45);
      for (int i = 0; i < blobs; ++i) {
        const Rgb c = scenery_color(rng);
        const double cx = uniform_real(rng, 0, img.width());
        const double cy = uniform_real(rng, 0, img.height());
        const double rx = uniform_real(rng, 20, 160);
        const double ry = uniform_real(rng, 20, 120);
        switch (uniform_int(rng, 0, 2)) {
          case 0:
            fill_ellipse(img, cx, cy, rx, ry, c);
            break;
          case 1:
            img.fill_rect({static_cast<int>(cx - rx), static_cast<int>(cy - ry),
                           static_cast<int>(2 * rx), static_cast<int>(2 * ry)},
                          c);
            break;
          default:
            fill_triangle(img, cx, cy - ry, cx - rx, cy + ry, cx + rx,
                          cy + uniform_real(rng, -ry, ry), c);
        }
      }
      add_uniform_noise(img, rng, 8);
      return;
    }
    case Background::kShop: {
      // Dark panels framed by thin light and dark lines, text strokes and
      // long separators: lots of horizontal structure, none of it a bar.
      const Rgb base{35, 30, 28};
      const Rgb panel{62, 50, 42};
      const Rgb line{205, 195, 170};
      const Rgb dark{14, 12, 12};
      const Rgb gold{200, 160, 70};
      img.fill(base);
      for (int y = 40; y < img.height(); y += uniform_int(rng, 70, 130)) {
        img.fill_rect({0, y, img.width(), 1}, line);
        img.fill_rect({0, y + 1, img.width(), 1}, dark);
      }
      const int cols = std::max(1, (img.width() - 80) / 150);
      for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < cols; ++col) {
          const Rect p{40 + col * 150, 60 + row * 125, 130, 100};
          img.fill_rect(p, dark);
          img.fill_rect({p.x + 1, p.y + 1, p.w - 2, p.h - 2}, line);
          img.fill_rect({p.x + 2, p.y + 2, p.w - 4, p.h - 4}, panel);
          // Item title and price strokes.
          for (int t = 0; t < 3; ++t) {
            const int len = uniform_int(rng, 30, 100);
            img.fill_rect({p.x + 10, p.y + 60 + t * 10, len, 2}, line);
          }
          img.fill_rect({p.x + 10, p.y + 12, uniform_int(rng, 40, 90), 14},
                        gold);
          img.fill_rect({p.x + 10, p.y + 30, 110, 1}, dark);
          img.fill_rect({p.x + 10, p.y + 31, 110, 1}, line);
        }
      }
      return;
    }
  }
}

void draw_skill_wheel(Image& img, const Rect& region, std::string_view label) {
  Rng rng(fnv1a(label) ^ 0x5eed5eedull);
  const Rgb rim{25, 25, 30};
  const auto buttons = skill_wheel_layout(region.w);
  for (size_t i = 0; i < buttons.size(); ++i) {
    const SkillButton& b = buttons[i];
    const double cx = region.x + b.cx;
    const double cy = region.y + b.cy;
    draw_disk(img, cx, cy, b.r, rim);
    draw_disk(img, cx, cy, b.r - 3, scenery_color(rng));
    const int side = static_cast<int>(1.3 * (b.r - 3));
    const Glyph g = sprite_glyph(std::string(label) + "/skill" +
                                     std::to_string(i),
                                 side);
    blend_glyph(img, g, static_cast<int>(cx) - side / 2,
                static_cast<int>(cy) - side / 2);
  }
}

BoxF scale_box(double x, double y, double w, double h, double inv) {
  return {x * inv, y * inv, w * inv, h * inv};
}

}  // namespace

void draw_disk(Image& img, double cx, double cy, double r, Rgb color) {
  fill_ellipse(img, cx, cy, r, r, color);
}

void draw_ring(Image& img, double cx, double cy, double r, double thickness,
               Rgb color) {
  const double outer = r + thickness / 2.0;
  const double inner = r - thickness / 2.0;
  const int minx = std::max(0, static_cast<int>(std::floor(cx - outer)));
  const int maxx = std::min(img.width() - 1, static_cast<int>(std::ceil(cx + outer)));
  const int miny = std::max(0, static_cast<int>(std::floor(cy - outer)));
  const int maxy = std::min(img.height() - 1, static_cast<int>(std::ceil(cy + outer)));
  for (int y = miny; y <= maxy; ++y) {
    for (int x = minx; x <= maxx; ++x) {
      const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
      if (d >= inner && d <= outer) img.set_rgb(x, y, color);
    }
  }
}

void blend_glyph(Image& img, const Glyph& glyph, int x, int y) {
  for (int gy = 0; gy < glyph.rgb.height(); ++gy) {
    for (int gx = 0; gx < glyph.rgb.width(); ++gx) {
      const int px = x + gx, py = y + gy;
      if (px < 0 || py < 0 || px >= img.width() || py >= img.height()) continue;
      if (glyph.alpha.at(gx, gy) != 0) img.set_rgb(px, py, glyph.rgb.rgb(gx, gy));
    }
  }
}

void add_uniform_noise(Image& img, Rng& rng, int amplitude) {
  for (uint8_t& v : img.pixels()) {
    const int n = uniform_int(rng, -amplitude, amplitude);
    v = static_cast<uint8_t>(std::clamp(v + n, 0, 255));
  }
}

std::vector<SkillButton> skill_wheel_layout(int side) {
  auto at = [side](double fx, double fy, double fr) {
    return SkillButton{static_cast<int>(std::lround(fx * side)),
                       static_cast<int>(std::lround(fy * side)),
                       static_cast<int>(std::lround(fr * side))};
  };
  return {at(0.25, 0.75, 0.1333), at(0.53, 0.42, 0.1), at(0.80, 0.25, 0.1),
          at(0.78, 0.65, 0.1)};
}

Glyph sprite_glyph(std::string_view label, int side) {
  Rng rng(fnv1a(label));
  Glyph g{Image(side, side, 3), Image(side, side, 1)};
  Image mask_canvas(side, side, 3);
  auto shape = [&](int kind, double cx, double cy, double rx, double ry,
                   Rgb color) {
    for (Image* target : {&g.rgb, &mask_canvas}) {
      const Rgb c = target == &g.rgb ? color : Rgb{255, 255, 255};
      switch (kind) {
        case 0:
          fill_ellipse(*target, cx, cy, rx, ry, c);
          break;
        case 1:
          target->fill_rect({static_cast<int>(cx - rx), static_cast<int>(cy - ry),
                             static_cast<int>(2 * rx), static_cast<int>(2 * ry)},
                            c);
          break;
        default:
          fill_triangle(*target, cx, cy - ry, cx - rx, cy + ry, cx + rx,
                        cy + ry, c);
      }
    }
  };
  const double s = side;
  // Body and head, then a handful of features inside the body's extent.
  shape(uniform_int(rng, 0, 2), s * 0.5, s * 0.62, s * uniform_real(rng, 0.22, 0.4),
        s * uniform_real(rng, 0.2, 0.34), sprite_color(rng, 0));
  shape(0, s * uniform_real(rng, 0.4, 0.6), s * 0.24, s * uniform_real(rng, 0.1, 0.2),
        s * uniform_real(rng, 0.1, 0.18), sprite_color(rng, 1));
  const int features = uniform_int(rng, 3, 6);
  for (int i = 0; i < features; ++i) {
    shape(uniform_int(rng, 0, 2), s * uniform_real(rng, 0.2, 0.8),
          s * uniform_real(rng, 0.2, 0.85), s * uniform_real(rng, 0.05, 0.18),
          s * uniform_real(rng, 0.05, 0.18), sprite_color(rng, i));
  }
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      g.alpha.at(x, y) = mask_canvas.at(x, y, 0) != 0 ? 255 : 0;
    }
  }
  return g;
}

RenderedScene render(const SceneSpec& spec) {
  const Size layout = layout_size(spec.dims);
  const BarLayout& bl = standard_bar_layout();
  for (const BarSpec& b : spec.bars) {
    if (b.x < 0 || b.y < 0 || b.x + bl.size.width > layout.width ||
        b.y + bl.size.height > layout.height) {
      throw std::invalid_argument("bar lies outside the frame");
    }
    if (!(b.fill >= 0.0 && b.fill <= 1.0)) {
      throw std::invalid_argument("bar fill must lie in [0, 1]");
    }
    if (b.level < 1 || b.level > 15) {
      throw std::invalid_argument("bar level must lie in [1, 15]");
    }
  }

  Rng rng(spec.seed);
  Image img(layout.width, layout.height, 3);
  draw_background(img, spec.background, rng);

  RenderedScene out;
  const double inv = static_cast<double>(spec.dims.height) / layout.height;
  if (spec.hud_label) {
    const Rect region = skill_region_rect(layout);
    draw_skill_wheel(img, region, *spec.hud_label);
    out.truth.skill_region = scale_box(region.x, region.y, region.w, region.h, inv);
    const SkillButton first = skill_wheel_layout(region.w).front();
    // Pixel (x, y) covers [x, x + 1), so a disk centered at c has its edge
    // symmetric about c - 0.5 in pixel indices.
    out.truth.first_skill = Circle{(region.x + first.cx - 0.5) * inv,
                                   (region.y + first.cy - 0.5) * inv,
                                   first.r * inv, 0};
  }
  for (const SpriteSpec& s : spec.sprites) {
    blend_glyph(img, sprite_glyph(s.label, kSpriteSize), s.x, s.y);
    out.truth.sprites.push_back(
        {s.label, scale_box(s.x, s.y, kSpriteSize, kSpriteSize, inv)});
    for (int i = 0; i < spec.occluders; ++i) {
      const int w = uniform_int(rng, 15, 45);
      const int h = uniform_int(rng, 15, 45);
      img.fill_rect({s.x + uniform_int(rng, 0, kSpriteSize - w),
                     s.y + uniform_int(rng, 0, kSpriteSize - h), w, h},
                    scenery_color(rng));
    }
  }
  for (const BarSpec& b : spec.bars) {
    draw_bar(img, b, rng);
    out.truth.bars.push_back({scale_box(b.x, b.y, bl.size.width,
                                        bl.size.height, inv),
                              b.camp, b.fill, b.level});
  }
  const NmsParams nms = NmsParams::for_template(bl.size);
  for (size_t i = 0; i < spec.bars.size(); ++i) {
    for (size_t j = i + 1; j < spec.bars.size(); ++j) {
      if (std::abs(spec.bars[i].x - spec.bars[j].x) < nms.t_x &&
          std::abs(spec.bars[i].y - spec.bars[j].y) < nms.t_y) {
        out.truth.warnings.push_back("bars " + std::to_string(i) + " and " +
                                     std::to_string(j) +
                                     " lie within the suppression distance");
      }
    }
  }
  out.image = layout == spec.dims
                  ? std::move(img)
                  : resize_bilinear(img, spec.dims.width, spec.dims.height);
  return out;
}

SceneSpec random_scene(Rng& rng, Size dims, const SceneOptions& options) {
  constexpr int kSlotW = 180;
  constexpr int kSlotH = 200;
  constexpr int kRows = 3;
  const BarLayout& bl = standard_bar_layout();
  const Size layout = layout_size(dims);

  SceneSpec spec;
  spec.dims = dims;
  spec.seed = rng();
  const int bg = uniform_int(rng, 0, 19);
  spec.background = bg < 2    ? Background::kSolid
                    : bg < 11 ? Background::kNoise
                              : Background::kTextured;

  const int cols = std::max(1, (layout.width - 20) / kSlotW);
  const int margin_x = (layout.width - cols * kSlotW) / 2;
  const int center_col = cols / 2;
  constexpr int kCenterRow = 1;

  int n = uniform_int(rng, options.min_bars, options.max_bars);
  const bool has_self =
      n > 0 && uniform_real(rng, 0.0, 1.0) < options.self_probability;
  const auto& labels = options.labels;
  if (labels.empty()) throw std::invalid_argument("scene needs at least one label");
  auto pick_label = [&] {
    return labels[uniform_int(rng, 0, static_cast<int>(labels.size()) - 1)];
  };
  const std::string self_label = options.self_label ? *options.self_label : pick_label();
  if (has_self) {
    spec.hud_label = self_label;
  } else if (uniform_int(rng, 0, 1) == 1) {
    spec.hud_label = pick_label();
  }
  const Rect skill = skill_region_rect(layout);

  struct Slot {
    int x, y;
  };
  std::vector<Slot> slots;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (has_self && r == kCenterRow && c == center_col) continue;
      const Rect box{margin_x + c * kSlotW, 15 + r * kSlotH, kSlotW, kSlotH};
      if (spec.hud_label && !box.intersect(skill).empty()) continue;
      slots.push_back({box.x, box.y});
    }
  }
  // Partial Fisher-Yates to choose the occupied slots.
  for (size_t i = 0; i + 1 < slots.size(); ++i) {
    std::swap(slots[i], slots[uniform_int(rng, static_cast<int>(i),
                                          static_cast<int>(slots.size()) - 1)]);
  }
  n = std::min(n, static_cast<int>(slots.size()) + (has_self ? 1 : 0));

  auto place = [&](int slot_x, int slot_y, Camp camp, double fill,
                   const std::string& label) {
    BarSpec b;
    b.x = slot_x + (kSlotW - bl.size.width) / 2 + uniform_int(rng, -12, 12);
    b.y = slot_y + uniform_int(rng, 0, 8);
    b.camp = camp;
    b.fill = fill;
    b.level = uniform_int(rng, 1, 15);
    spec.bars.push_back(b);
    const int cx = b.x + bl.size.width / 2;
    spec.sprites.push_back(
        {label, cx - kSpriteSize / 2,
         b.y + bl.size.height + kAppearanceGap +
             (kAppearanceSize - kSpriteSize) / 2});
  };
  auto random_fill = [&] {
    return std::round(uniform_real(rng, 0.05, 1.0) * 1000.0) / 1000.0;
  };

  int placed = 0;
  if (has_self) {
    const bool empty = options.empty_bars_only;
    place(margin_x + center_col * kSlotW, 15 + kCenterRow * kSlotH,
          empty ? Camp::kUnknown : Camp::kSelf, empty ? 0.0 : random_fill(),
          self_label);
    ++placed;
  }
  for (size_t s = 0; placed < n && s < slots.size(); ++s, ++placed) {
    Camp camp;
    double fill;
    if (options.empty_bars_only ||
        uniform_real(rng, 0.0, 1.0) < options.empty_probability) {
      camp = Camp::kUnknown;
      fill = 0.0;
    } else {
      camp = uniform_int(rng, 0, 1) == 0 ? Camp::kFriend : Camp::kEnemy;
      fill = random_fill();
    }
    place(slots[s].x, slots[s].y, camp, fill, pick_label());
  }
  return spec;
}

SceneSpec shop_scene(uint64_t seed, Size dims) {
  SceneSpec spec;
  spec.dims = dims;
  spec.background = Background::kShop;
  spec.seed = seed;
  return spec;
}

Image sprite_sample(std::string_view label, Rng& rng, bool occlude) {
  Image img(kAppearanceSize, kAppearanceSize, 3);
  draw_background(img,
                  uniform_int(rng, 0, 1) ? Background::kTextured
                                         : Background::kNoise,
                  rng);
  const int off = (kAppearanceSize - kSpriteSize) / 2;
  blend_glyph(img, sprite_glyph(label, kSpriteSize),
              off + uniform_int(rng, -4, 4), off + uniform_int(rng, -4, 4));
  if (occlude) {
    const int w = uniform_int(rng, 15, 45);
    const int h = uniform_int(rng, 15, 45);
    img.fill_rect({off + uniform_int(rng, 0, kSpriteSize - w),
                   off + uniform_int(rng, 0, kSpriteSize - h), w, h},
                  scenery_color(rng));
  }
  add_uniform_noise(img, rng, 8);
  return img;
}

namespace {

nlohmann::json box_json(const BoxF& b) {
  return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

BoxF box_from(const nlohmann::json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(),
          j.at("w").get<double>(), j.at("h").get<double>()};
}

}  // namespace

void save_manifest(const std::filesystem::path& path, const Manifest& m) {
  nlohmann::json frames = nlohmann::json::array();
  for (const CorpusEntry& e : m.frames) {
    nlohmann::json bars = nlohmann::json::array();
    for (const TruthBar& b : e.truth.bars) {
      bars.push_back({{"bbox", box_json(b.rect)},
                      {"camp", camp_name(b.camp)},
                      {"fill", b.fill},
                      {"level", b.level}});
    }
    nlohmann::json sprites = nlohmann::json::array();
    for (const TruthSprite& s : e.truth.sprites) {
      sprites.push_back({{"label", s.label}, {"bbox", box_json(s.rect)}});
    }
    nlohmann::json f = {{"file", e.file},
                        {"width", e.dims.width},
                        {"height", e.dims.height},
                        {"seed", e.seed},
                        {"background", e.background},
                        {"bars", bars},
                        {"sprites", sprites},
                        {"warnings", e.truth.warnings}};
    if (e.truth.skill_region) {
      f["skill_region"] = box_json(*e.truth.skill_region);
    }
    if (e.truth.first_skill) {
      const Circle& c = *e.truth.first_skill;
      f["first_skill"] = {{"cx", c.cx}, {"cy", c.cy}, {"r", c.r}};
    }
    frames.push_back(std::move(f));
  }
  const nlohmann::json doc = {{"schema", m.schema},
                              {"generator", "herodet-synth"},
                              {"seed", m.seed},
                              {"frames", frames}};
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path.string());
  Manifest m;
  try {
    const auto doc = nlohmann::json::parse(in);
    m.schema = doc.at("schema").get<int>();
    if (m.schema != 1) {
      throw std::runtime_error("unsupported manifest schema " +
                               std::to_string(m.schema));
    }
    m.seed = doc.value("seed", uint64_t{0});
    for (const auto& f : doc.at("frames")) {
      CorpusEntry e;
      e.file = f.at("file").get<std::string>();
      e.dims = {f.at("width").get<int>(), f.at("height").get<int>()};
      e.seed = f.value("seed", uint64_t{0});
      e.background = f.value("background", std::string());
      for (const auto& b : f.at("bars")) {
        const auto camp = parse_camp(b.at("camp").get<std::string>());
        if (!camp) throw std::runtime_error("unknown camp in manifest");
        e.truth.bars.push_back({box_from(b.at("bbox")), *camp,
                                b.value("fill", 1.0), b.value("level", 1)});
      }
      if (f.contains("sprites")) {
        for (const auto& s : f.at("sprites")) {
          e.truth.sprites.push_back(
              {s.at("label").get<std::string>(), box_from(s.at("bbox"))});
        }
      }
      if (f.contains("skill_region")) {
        e.truth.skill_region = box_from(f.at("skill_region"));
      }
      if (f.contains("first_skill")) {
        const auto& c = f.at("first_skill");
        e.truth.first_skill = Circle{c.at("cx").get<double>(),
                                     c.at("cy").get<double>(),
                                     c.at("r").get<double>(), 0};
      }
      e.truth.warnings =
          f.value("warnings", std::vector<std::string>{});
      m.frames.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed manifest " + path.string() + ": " +
                             e.what());
  }
  return m;
}

Manifest render_corpus(const std::filesystem::path& root,
                       const CorpusOptions& options) {
  if (options.count < 1) {
    throw std::invalid_argument("corpus needs at least one frame");
  }
  if (options.dims.empty()) {
    throw std::invalid_argument("corpus needs at least one frame size");
  }
  std::filesystem::create_directories(root / "frames");
  // Specs are drawn sequentially from one generator so the corpus does not
  // depend on the job count.
  Rng rng(options.seed);
  std::vector<SceneSpec> specs;
  for (int i = 0; i < options.count; ++i) {
    const Size dims = options.dims[uniform_int(
        rng, 0, static_cast<int>(options.dims.size()) - 1)];
    specs.push_back(random_scene(rng, dims, options.scene));
  }
  Manifest m;
  m.seed = options.seed;
  m.frames.resize(specs.size());
  std::atomic<int> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (int i = next++; i < options.count; i = next++) {
      try {
        char name[32];
        std::snprintf(name, sizeof(name), "frames/%04d.png", i);
        RenderedScene scene = render(specs[i]);
        write_png(root / name, scene.image);
        m.frames[i] = {name, specs[i].dims, specs[i].seed,
                       std::string(background_name(specs[i].background)),
                       std::move(scene.truth)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = options.count;
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  save_manifest(root / "manifest.json", m);
  return m;
}

}  // namespace herodet::synth
