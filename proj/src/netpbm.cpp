/*
 * Copyright 2026 The wavereg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "wavereg/netpbm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

struct Header {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::size_t payload_offset = 0;
};

class HeaderReader {
 public:
  HeaderReader(const std::string& bytes, const std::filesystem::path& path) : bytes_(bytes), path_(path) {}

  Header read() {
    Header h;
    if (bytes_.size() < 2) fail("magic", "file too short");
    h.magic = bytes_.substr(0, 2);
    pos_ = 2;
    if (h.magic != "P5") fail("magic", "unsupported magic '" + printable(h.magic) + "'");
    h.width = read_int("width");
    h.height = read_int("height");
    h.maxval = read_int("maxval");
    if (h.width < 1) fail("width", "must be positive");
    if (h.height < 1) fail("height", "must be positive");
    if (h.maxval < 1 || h.maxval > 65535) fail("maxval", "must be in [1, 65535]");
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      fail("maxval", "missing whitespace before payload");
    }
    h.payload_offset = pos_ + 1;
    return h;
  }

 private:
  int read_int(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) fail(field, "value too large");
      ++pos_;
    }
    if (pos_ == start) fail(field, "expected an integer");
    return static_cast<int>(value);
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  static std::string printable(const std::string& s) {
    std::string out;
    for (char c : s) out += std::isprint(static_cast<unsigned char>(c)) ? c : '?';
    return out;
  }

  [[noreturn]] void fail(const char* field, const std::string& why) const {
    throw Error(ErrorKind::Format, path_.string() + ": invalid " + field + ": " + why);
  }

  const std::string& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

std::string netpbm_header(const char* magic, int width, int height, int maxval) {
  return std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
         std::to_string(maxval) + "\n";
}

void write_samples(std::ofstream& out, const std::vector<unsigned>& samples, int maxval) {
  std::string payload;
  if (maxval < 256) {
    payload.reserve(samples.size());
    for (unsigned s : samples) payload.push_back(static_cast<char>(s));
  } else {
    payload.reserve(2 * samples.size());
    for (unsigned s : samples) {
      payload.push_back(static_cast<char>((s >> 8) & 0xff));
      payload.push_back(static_cast<char>(s & 0xff));
    }
  }
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

Image2D load_pgm(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const Header h = HeaderReader(bytes, path).read();

  const std::size_t count = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
  const std::size_t sample_bytes = h.maxval < 256 ? 1 : 2;
  if (bytes.size() - h.payload_offset < count * sample_bytes) {
    throw Error(ErrorKind::Format, path.string() + ": invalid payload: truncated, expected " +
                                       std::to_string(count * sample_bytes) + " bytes, found " +
                                       std::to_string(bytes.size() - h.payload_offset));
  }

  std::vector<double> data(count);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + h.payload_offset);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = sample_bytes == 1 ? p[i] : static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
  }
  return Image2D(h.width, h.height, std::move(data));
}

void save_pgm(const Image2D& image, const std::filesystem::path& path, int maxval) {
  if (maxval != 255 && maxval != 65535) {
    throw Error(ErrorKind::Parameter, "PGM maxval must be 255 or 65535, got " + std::to_string(maxval));
  }
  if (image.empty()) throw Error(ErrorKind::Parameter, "cannot save an empty image");
  std::vector<unsigned> samples(image.size());
  const auto src = image.data();
  std::transform(src.begin(), src.end(), samples.begin(), [maxval](double v) {
    return static_cast<unsigned>(std::floor(std::clamp(v, 0.0, static_cast<double>(maxval)) + 0.5));
  });

  auto out = open_for_write(path);
  out << netpbm_header("P5", image.width(), image.height(), maxval);
  write_samples(out, samples, maxval);
  finish_write(out, path);
}

void save_mask_pgm(const Mask2D& mask, const std::filesystem::path& path) {
  std::vector<unsigned> samples(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) samples[i] = mask.at(i) ? 255u : 0u;
  auto out = open_for_write(path);
  out << netpbm_header("P5", mask.width(), mask.height(), 255);
  write_samples(out, samples, 255);
  finish_write(out, path);
}

Mask2D load_mask_pgm(const std::filesystem::path& path) {
  const Image2D image = load_pgm(path);
  Mask2D mask(image.width(), image.height(), false);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) mask.set(x, y, image(x, y) > 0.0);
  return mask;
}

void save_ppm(const RgbImage& image, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << netpbm_header("P6", image.width(), image.height(), 255);
  const auto bytes = image.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  finish_write(out, path);
}

}  // namespace wavereg
