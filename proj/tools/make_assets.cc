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

// Usage: herodet_make_assets <assets-dir>

#include <filesystem>
#include <iostream>

#include "herodet/png_io.h"
#include "herodet/template_match.h"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: herodet_make_assets <assets-dir>\n";
    return 2;
  }
  try {
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    const auto tmpl = herodet::BloodBarTemplate::standard();
    herodet::write_png(dir / "template.png", tmpl.image());
    herodet::write_png(dir / "template_mask.png", tmpl.mask());
  } catch (const std::exception& e) {
    std::cerr << "herodet_make_assets: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
