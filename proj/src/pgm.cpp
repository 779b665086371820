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

#include "hefi/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "hefi/io.hpp"

namespace hefi {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  // Skips whitespace and '#' comments between header tokens.
  void skip_space() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(data_.data() + pos_, data_.data() + data_.size(), value);
    if (ec != std::errc()) throw std::runtime_error("malformed PGM: expected a number");
    pos_ = static_cast<std::size_t>(ptr - data_.data());
    return value;
  }

  std::string_view take(std::size_t n) {
    if (pos_ + n > data_.size()) throw std::runtime_error("malformed PGM: truncated raster");
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  void expect_single_space() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      throw std::runtime_error("malformed PGM: missing separator before raster");
    }
    ++pos_;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::string_view data) {
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '5' && data[1] != '2')) {
    throw std::runtime_error("malformed PGM: expected P5 or P2 magic");
  }
  const bool binary = data[1] == '5';
  Reader in(data.substr(2));
  GrayImage img;
  img.width = in.number();
  img.height = in.number();
  const std::size_t maxval = in.number();
  if (img.width == 0 || img.height == 0) throw std::runtime_error("malformed PGM: empty image");
  if (maxval == 0 || maxval > 255) throw std::runtime_error("unsupported PGM: maxval must be in [1, 255]");
  img.max_value = static_cast<unsigned>(maxval);
  const std::size_t count = img.width * img.height;
  img.pixels.resize(count);
  if (binary) {
    in.expect_single_space();
    const auto raster = in.take(count);
    for (std::size_t i = 0; i < count; ++i) img.pixels[i] = static_cast<std::uint8_t>(raster[i]);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t v = in.number();
      if (v > maxval) throw std::runtime_error("malformed PGM: pixel exceeds maxval");
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  for (auto p : img.pixels) {
    if (p > img.max_value) throw std::runtime_error("malformed PGM: pixel exceeds maxval");
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_pgm(data);
}

std::string format_pgm(const GrayImage& img, bool binary) {
  std::ostringstream out;
  out << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << '\n' << img.max_value << '\n';
  if (binary) {
    out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  } else {
    for (std::size_t r = 0; r < img.height; ++r) {
      for (std::size_t c = 0; c < img.width; ++c) {
        out << (c ? " " : "") << static_cast<unsigned>(img.pixels[r * img.width + c]);
      }
      out << '\n';
    }
  }
  return out.str();
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path, bool binary) {
  write_file_atomic(path, format_pgm(img, binary));
}

}  // namespace hefi
