/*
 * Copyright 2026 The hefi Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hefi {

// 8-bit grayscale image, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned max_value = 255;
  std::vector<std::uint8_t> pixels;

  std::size_t size() const { return pixels.size(); }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Parses P5 (binary) or P2 (ASCII) netpbm graymaps with maxval <= 255.
// Throws std::runtime_error on malformed input.
GrayImage parse_pgm(std::string_view data);
GrayImage read_pgm(const std::filesystem::path& path);

std::string format_pgm(const GrayImage& img, bool binary = true);
void write_pgm(const GrayImage& img, const std::filesystem::path& path, bool binary = true);

}  // namespace hefi
