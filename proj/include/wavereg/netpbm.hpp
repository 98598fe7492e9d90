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

#include <filesystem>

#include "wavereg/image.hpp"

namespace wavereg {

/// Reads a binary graymap (P5). 16-bit samples are big-endian.
Image2D load_pgm(const std::filesystem::path& path);

/// Writes a binary graymap. Intensities are clamped to [0, maxval] and rounded
/// half-up. maxval must be 255 or 65535.
void save_pgm(const Image2D& image, const std::filesystem::path& path, int maxval = 255);

/// Mask as an 8-bit graymap, 255 for set bits and 0 otherwise.
void save_mask_pgm(const Mask2D& mask, const std::filesystem::path& path);

/// Any nonzero sample is a set bit.
Mask2D load_mask_pgm(const std::filesystem::path& path);

/// Writes a binary pixmap (P6), maxval 255.
void save_ppm(const RgbImage& image, const std::filesystem::path& path);

}  // namespace wavereg
