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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "wavereg/image.hpp"
#include "wavereg/transform.hpp"

namespace wavereg {

enum class BasePattern { PhantomEllipses, Checker, NoiseSmoothed };

const char* to_string(BasePattern p) noexcept;
/// Accepts "phantom", "phantom_ellipses", "checker", "noise", "noise_smoothed".
std::optional<BasePattern> parse_pattern(std::string_view name) noexcept;

std::string to_string(const RemapMode& mode);
/// "identity", "invert", "gamma:<g>", "negate-log".
std::optional<RemapMode> parse_remap(std::string_view text) noexcept;

inline constexpr int kMinFixtureSize = 64;

struct FixtureSpec {
  BasePattern base_pattern = BasePattern::PhantomEllipses;
  int size = 128;
  /// Transform a registration of (fixed, moving) should recover.
  AffineParams truth;
  RemapMode remap;
  double noise_sigma = 0.0;  // fraction of the remapped intensity range
  std::uint64_t seed = 0;

  void validate() const;
};

struct FixturePair {
  Image2D fixed;
  Image2D moving;
  AffineParams truth;          // what registration should recover
  AffineParams truth_inverse;  // the transform applied to build `moving`
  CenterPixel center;
};

/// Renders the base pattern as `fixed`; `moving` is the remapped pattern
/// warped by truth^-1 plus seeded Gaussian noise, so warping `moving` by
/// `truth` realigns it with `fixed`.
FixturePair generate_pair(const FixtureSpec& spec);

/// Base pattern alone, intensities in [0, 255].
Image2D render_pattern(BasePattern pattern, int size, std::uint64_t seed);

/// Writes fixed.pgm, moving.pgm and truth.json into `dir` (created if needed).
void write_fixture(const FixtureSpec& spec, const FixturePair& pair, const std::filesystem::path& dir);

std::string fixture_truth_json(const FixtureSpec& spec, const FixturePair& pair);

}  // namespace wavereg
