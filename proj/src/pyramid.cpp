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

#include "wavereg/pyramid.hpp"

#include <string>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

// Whole-sample symmetric reflection: -1 -> 1, n -> n - 2.
int reflect(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

Image2D reduce(const Image2D& image, const Kernel5& kernel) {
  const int w = image.width(), h = image.height();
  if (w < 2 || h < 2) {
    throw Error(ErrorKind::Parameter, "image too small to reduce: " + std::to_string(w) + "x" + std::to_string(h));
  }
  const int ow = (w + 1) / 2, oh = (h + 1) / 2;

  // Separable: filter rows at the retained columns, then columns.
  Image2D rows(ow, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int m = -2; m <= 2; ++m) acc += kernel[m + 2] * image(reflect(2 * x + m, w), y);
      rows(x, y) = acc;
    }
  }
  Image2D out(ow, oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int n = -2; n <= 2; ++n) acc += kernel[n + 2] * rows(x, reflect(2 * y + n, h));
      out(x, y) = acc;
    }
  }
  return out;
}

GaussianPyramid build_pyramid(const Image2D& image, int num_levels, const Kernel5& kernel) {
  if (num_levels < 1) throw Error(ErrorKind::Parameter, "pyramid needs at least one level");
  GaussianPyramid pyramid;
  pyramid.kernel = kernel;
  pyramid.levels.push_back(image);
  while (static_cast<int>(pyramid.levels.size()) < num_levels) {
    const Image2D& last = pyramid.levels.back();
    const int nw = (last.width() + 1) / 2, nh = (last.height() + 1) / 2;
    if (nw < kMinPyramidLevelSize || nh < kMinPyramidLevelSize) {
      pyramid.truncated = true;
      break;
    }
    pyramid.levels.push_back(reduce(last, kernel));
  }
  return pyramid;
}

}  // namespace wavereg
