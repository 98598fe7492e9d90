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

#include <array>
#include <vector>

#include "wavereg/image.hpp"

namespace wavereg {

/// 1-D taps of the separable generating kernel, offsets -2..2.
using Kernel5 = std::array<double, 5>;

/// Binomial kernel [1 4 6 4 1] / 16.
constexpr Kernel5 binomial_kernel() { return {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16}; }

/// Smallest allowed width/height of any pyramid level.
inline constexpr int kMinPyramidLevelSize = 8;

/// Low-pass filter with w(m,n) = k(m) k(n) and subsample by 2:
///   out(x, y) = sum_{m,n=-2..2} w(m,n) in(2x + m, 2y + n)
/// Source indices outside the image are mirrored about the border pixel.
Image2D reduce(const Image2D& image, const Kernel5& kernel = binomial_kernel());

struct GaussianPyramid {
  std::vector<Image2D> levels;  // levels[0] is the input
  Kernel5 kernel = binomial_kernel();
  bool truncated = false;       // fewer levels than requested were built
};

/// levels[k] = reduce(levels[k-1]). Stops early (setting `truncated`) rather
/// than produce a level smaller than kMinPyramidLevelSize on either side.
GaussianPyramid build_pyramid(const Image2D& image, int num_levels,
                              const Kernel5& kernel = binomial_kernel());

}  // namespace wavereg
