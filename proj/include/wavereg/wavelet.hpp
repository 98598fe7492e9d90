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

#include "wavereg/image.hpp"

namespace wavereg {

/// One level of the 2-D orthonormal Haar transform.
///
/// For each 2x2 block [a b; c d]:
///   ll = (a + b + c + d) / 2
///   lh = (a - b + c - d) / 2   horizontal (column-to-column) detail
///   hl = (a + b - c - d) / 2   vertical (row-to-row) detail
///   hh = (a - b - c + d) / 2
/// Odd dimensions are padded by replicating the last row/column.
struct SubBands {
  Image2D ll, lh, hl, hh;
  int original_width = 0;
  int original_height = 0;

  int band_width() const noexcept { return ll.width(); }
  int band_height() const noexcept { return ll.height(); }
};

SubBands dwt2(const Image2D& image);

/// Exact inverse of dwt2, cropped to the recorded original dimensions.
Image2D idwt2(const SubBands& bands);

}  // namespace wavereg
