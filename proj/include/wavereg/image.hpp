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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace wavereg {

/// Single-channel raster of finite real intensities, row-major.
class Image2D {
 public:
  Image2D() = default;
  Image2D(int width, int height, double fill = 0.0);
  Image2D(int width, int height, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  double& operator()(int x, int y) noexcept { return data_[index(x, y)]; }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// (min, max) over all pixels. Empty images report (0, 0).
  std::pair<double, double> range() const noexcept;

  bool same_shape(const Image2D& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

/// One validity flag per pixel.
class Mask2D {
 public:
  Mask2D() = default;
  Mask2D(int width, int height, bool value = true);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator()(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) noexcept { bits_[index(x, y)] = value ? 1 : 0; }
  bool at(std::size_t i) const noexcept { return bits_[i] != 0; }

  std::size_t count() const noexcept;

  bool same_shape(const Image2D& image) const noexcept {
    return width_ == image.width() && height_ == image.height();
  }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  Rgb operator()(int x, int y) const noexcept;
  void set(int x, int y, Rgb value) noexcept;

  /// Interleaved r,g,b bytes, 3 * width * height of them.
  std::span<const std::uint8_t> bytes() const noexcept { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

enum class RemapKind { Identity, Invert, Gamma, NegateLog };

struct RemapMode {
  RemapKind kind = RemapKind::Identity;
  double gamma = 1.0;

  static RemapMode identity() { return {}; }
  static RemapMode invert() { return {RemapKind::Invert, 1.0}; }
  static RemapMode power(double g) { return {RemapKind::Gamma, g}; }
  static RemapMode negate_log() { return {RemapKind::NegateLog, 1.0}; }
};

/// Pixelwise intensity remapping used to synthesize a second modality.
///
/// Invert and gamma operate over the image's own [min, max] range, which they
/// preserve:
///   invert: x -> min + max - x
///   gamma:  x -> min + (max - min) * ((x - min) / (max - min))^g
/// negate-log maps x -> log1p(max) - log1p(x), which requires x >= 0.
Image2D remap_intensity(const Image2D& image, const RemapMode& mode);

struct OverlayOptions {
  /// Agreement tolerance as a fraction of the fixed image's intensity range.
  double tolerance_fraction = 0.1;
};

/// Grey where fixed and registered agree within tolerance, fuchsia where they
/// differ, black where the mask is unset.
RgbImage overlay_diff(const Image2D& fixed, const Image2D& registered, const Mask2D& mask,
                      const OverlayOptions& options = {});

}  // namespace wavereg
