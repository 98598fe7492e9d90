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

#include "wavereg/wavelet.hpp"

#include <algorithm>
#include <string>

#include "wavereg/error.hpp"

namespace wavereg {

SubBands dwt2(const Image2D& image) {
  const int w = image.width(), h = image.height();
  if (w < 2 || h < 2) {
    throw Error(ErrorKind::Parameter, "image too small for DWT: " + std::to_string(w) + "x" + std::to_string(h));
  }
  const int bw = (w + 1) / 2, bh = (h + 1) / 2;
  SubBands out{Image2D(bw, bh), Image2D(bw, bh), Image2D(bw, bh), Image2D(bw, bh), w, h};

  for (int j = 0; j < bh; ++j) {
    const int y0 = 2 * j, y1 = std::min(2 * j + 1, h - 1);
    for (int i = 0; i < bw; ++i) {
      const int x0 = 2 * i, x1 = std::min(2 * i + 1, w - 1);
      const double a = image(x0, y0), b = image(x1, y0);
      const double c = image(x0, y1), d = image(x1, y1);
      out.ll(i, j) = (a + b + c + d) / 2;
      out.lh(i, j) = (a - b + c - d) / 2;
      out.hl(i, j) = (a + b - c - d) / 2;
      out.hh(i, j) = (a - b - c + d) / 2;
    }
  }
  return out;
}

Image2D idwt2(const SubBands& bands) {
  const int bw = bands.ll.width(), bh = bands.ll.height();
  for (const Image2D* plane : {&bands.lh, &bands.hl, &bands.hh}) {
    if (!plane->same_shape(bands.ll)) throw Error(ErrorKind::Dimension, "sub-band planes differ in size");
  }
  const int w = bands.original_width, h = bands.original_height;
  if (w < 1 || h < 1 || (w + 1) / 2 != bw || (h + 1) / 2 != bh) {
    throw Error(ErrorKind::Dimension, "original size " + std::to_string(w) + "x" + std::to_string(h) +
                                          " inconsistent with " + std::to_string(bw) + "x" + std::to_string(bh) +
                                          " sub-bands");
  }

  Image2D out(w, h);
  for (int j = 0; j < bh; ++j) {
    for (int i = 0; i < bw; ++i) {
      const double ll = bands.ll(i, j), lh = bands.lh(i, j), hl = bands.hl(i, j), hh = bands.hh(i, j);
      const double block[2][2] = {{(ll + lh + hl + hh) / 2, (ll - lh + hl - hh) / 2},
                                  {(ll + lh - hl - hh) / 2, (ll - lh - hl + hh) / 2}};
      for (int dy = 0; dy < 2; ++dy) {
        const int y = 2 * j + dy;
        if (y >= h) break;
        for (int dx = 0; dx < 2; ++dx) {
          const int x = 2 * i + dx;
          if (x >= w) break;
          out(x, y) = block[dy][dx];
        }
      }
    }
  }
  return out;
}

}  // namespace wavereg
