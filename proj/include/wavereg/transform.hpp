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
#include <string>

#include "wavereg/image.hpp"

namespace wavereg {

/// Six-parameter affine model {tx, ty, theta, sx, sy, k}.
///
/// The linear part is Rotation(theta) * Skew(k) * Scale(sx, sy) and acts about
/// a center pixel. Transforms map fixed-image coordinates to moving-image
/// coordinates, so a positive tx moves image content to the left and a positive
/// ty moves it up (y grows downward).
struct AffineParams {
  double tx = 0.0;
  double ty = 0.0;
  double theta = 0.0;  // radians
  double sx = 1.0;
  double sy = 1.0;
  double k = 0.0;

  static constexpr int kCount = 6;

  static AffineParams identity() { return {}; }
  bool valid() const noexcept;

  double operator[](int i) const noexcept;
  double& operator[](int i) noexcept;

  bool operator==(const AffineParams&) const = default;
};

struct CenterPixel {
  double x = 0.0;
  double y = 0.0;

  /// ((W - 1) / 2, (H - 1) / 2)
  static CenterPixel of(int width, int height) {
    return {(width - 1) / 2.0, (height - 1) / 2.0};
  }
};

/// Homogeneous 3x3 matrix with bottom row (0, 0, 1), stored as
///   [g1 g2 g3]
///   [g4 g5 g6]
struct AffineMatrix {
  std::array<double, 6> g{1, 0, 0, 0, 1, 0};

  static AffineMatrix identity() { return {}; }

  double det() const noexcept { return g[0] * g[4] - g[1] * g[3]; }
  double apply_x(double x, double y) const noexcept { return g[0] * x + g[1] * y + g[2]; }
  double apply_y(double x, double y) const noexcept { return g[3] * x + g[4] * y + g[5]; }

  /// this * rhs
  AffineMatrix operator*(const AffineMatrix& rhs) const noexcept;
};

/// G = Translation * Rotation * Skew * Scale, in closed form.
AffineMatrix compose_matrix(const AffineParams& params);

/// Same linear block as compose_matrix with the translation column replaced by
///   (g3 - g1 xt - g2 yt + xt, g6 - g4 xt - g5 yt + yt),
/// i.e. H v = A (v - c) + c + t.
AffineMatrix center_adjusted(const AffineParams& params, const CenterPixel& center);

AffineMatrix invert(const AffineMatrix& m);

/// Recovers the parameter set whose center_adjusted matrix is `m`. Requires a
/// positive determinant.
AffineParams params_from_matrix(const AffineMatrix& m, const CenterPixel& center);

/// Parameters of the inverse mapping about the same center.
AffineParams inverse_params(const AffineParams& params, const CenterPixel& center);

/// Translation scaled by `factor`; the linear part is resolution independent.
AffineParams scale_params_between_levels(const AffineParams& params, double factor);

struct WarpResult {
  Image2D image;
  Mask2D mask;
};

/// Pulls each output pixel u from the moving image at m * u with bilinear
/// interpolation. Output has the moving image's dimensions. Pixels whose
/// source falls outside [0, W-1] x [0, H-1] get `fill` and a cleared mask bit.
WarpResult warp(const Image2D& moving, const AffineMatrix& m, double fill = 0.0);

WarpResult warp(const Image2D& moving, const AffineParams& params, const CenterPixel& center,
                double fill = 0.0);

/// {"tx","ty","theta_rad","sx","sy","k","center":[xt,yt]}
std::string params_to_json(const AffineParams& params, const CenterPixel& center);
AffineParams params_from_json(const std::string& text, CenterPixel* center = nullptr);

}  // namespace wavereg
