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

#include "wavereg/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::Parameter,
                "image dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Image2D::Image2D(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  if (!std::isfinite(fill)) throw Error(ErrorKind::Parameter, "image fill value must be finite");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image2D::Image2D(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::Dimension, "image data length " + std::to_string(data_.size()) +
                                          " does not match " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorKind::Parameter, "image intensities must be finite");
  }
}

std::pair<double, double> Image2D::range() const noexcept {
  if (data_.empty()) return {0.0, 0.0};
  auto [lo, hi] = std::minmax_element(data_.begin(), data_.end());
  return {*lo, *hi};
}

Mask2D::Mask2D(int width, int height, bool value) : width_(width), height_(height) {
  check_dims(width, height);
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value ? 1 : 0);
}

std::size_t Mask2D::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

RgbImage::RgbImage(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(3 * static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Rgb RgbImage::operator()(int x, int y) const noexcept {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
  return {data_[i], data_[i + 1], data_[i + 2]};
}

void RgbImage::set(int x, int y, Rgb value) noexcept {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width_ + x);
  data_[i] = value.r;
  data_[i + 1] = value.g;
  data_[i + 2] = value.b;
}

Image2D remap_intensity(const Image2D& image, const RemapMode& mode) {
  if (image.empty()) throw Error(ErrorKind::Parameter, "cannot remap an empty image");
  if (mode.kind == RemapKind::Gamma && !(mode.gamma > 0.0 && std::isfinite(mode.gamma))) {
    throw Error(ErrorKind::Parameter, "gamma must be positive, got " + std::to_string(mode.gamma));
  }

  const auto [lo, hi] = image.range();
  const double span = hi - lo;
  std::vector<double> out(image.data().begin(), image.data().end());

  switch (mode.kind) {
    case RemapKind::Identity:
      break;
    case RemapKind::Invert:
      for (double& v : out) v = lo + hi - v;
      break;
    case RemapKind::Gamma:
      if (span > 0.0) {
        for (double& v : out) v = lo + span * std::pow((v - lo) / span, mode.gamma);
      }
      break;
    case RemapKind::NegateLog: {
      if (lo < 0.0) throw Error(ErrorKind::Parameter, "negate-log requires nonnegative intensities");
      const double top = std::log1p(hi);
      for (double& v : out) v = top - std::log1p(v);
      break;
    }
  }
  return Image2D(image.width(), image.height(), std::move(out));
}

RgbImage overlay_diff(const Image2D& fixed, const Image2D& registered, const Mask2D& mask,
                      const OverlayOptions& options) {
  if (!fixed.same_shape(registered) || !mask.same_shape(fixed)) {
    throw Error(ErrorKind::Dimension, "overlay inputs differ in size: fixed " + std::to_string(fixed.width()) + "x" +
                                          std::to_string(fixed.height()) + ", registered " +
                                          std::to_string(registered.width()) + "x" +
                                          std::to_string(registered.height()) + ", mask " +
                                          std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
  }

  // Display normalization spans both images so grey levels are comparable.
  double lo = 0.0, hi = 0.0, fixed_lo = 0.0, fixed_hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (!mask.at(i)) continue;
    const double f = fixed.data()[i], r = registered.data()[i];
    if (!any) {
      lo = std::min(f, r);
      hi = std::max(f, r);
      fixed_lo = fixed_hi = f;
      any = true;
    } else {
      lo = std::min({lo, f, r});
      hi = std::max({hi, f, r});
      fixed_lo = std::min(fixed_lo, f);
      fixed_hi = std::max(fixed_hi, f);
    }
  }
  const double tolerance = options.tolerance_fraction * (fixed_hi - fixed_lo);
  const double span = hi - lo;
  auto normalize = [&](double v) { return span > 0.0 ? (v - lo) / span : 0.0; };
  auto to_byte = [](double unit) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
  };

  RgbImage out(fixed.width(), fixed.height());
  for (int y = 0; y < fixed.height(); ++y) {
    for (int x = 0; x < fixed.width(); ++x) {
      if (!mask(x, y)) continue;  // stays black
      const double f = fixed(x, y), r = registered(x, y);
      if (std::abs(f - r) <= tolerance) {
        const std::uint8_t v = to_byte(normalize(f));
        out.set(x, y, {v, v, v});
      } else {
        // Fuchsia brightens with the size of the disagreement.
        const double d = std::abs(normalize(f) - normalize(r));
        const std::uint8_t m = to_byte(0.5 + 0.5 * d);
        out.set(x, y, {m, 0, m});
      }
    }
  }
  return out;
}

}  // namespace wavereg
