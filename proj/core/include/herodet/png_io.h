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

#ifndef HERODET_PNG_IO_H_
#define HERODET_PNG_IO_H_

#include <filesystem>

#include "herodet/image.h"

namespace herodet {

// Reads an 8-bit PNG. Gray stays single-channel; palette and RGB become
// 3-channel; alpha is dropped; 16-bit samples are stripped to 8 bits.
// Throws std::runtime_error on unreadable or malformed files.
Image read_png(const std::filesystem::path& path);

// Writes an 8-bit gray or RGB PNG. Output bytes depend only on the image.
void write_png(const std::filesystem::path& path, const Image& img);

}  // namespace herodet

#endif  // HERODET_PNG_IO_H_
