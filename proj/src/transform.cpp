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

#include "wavereg/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "wavereg/error.hpp"

namespace wavereg {

namespace {

// Source coordinates this close outside the support still count as inside;
// rotations about the center land on the border with roundoff.
constexpr double kSupportSlack = 1e-9;

void require_valid(const AffineParams& p) {
  if (!p.valid()) {
    throw Error(ErrorKind::Parameter, "affine parameters need finite values and sx, sy > 0 (sx=" +
                                          std::to_string(p.sx) + ", sy=" + std::to_string(p.sy) + ")");
  }
}

}  // namespace

bool AffineParams::valid() const noexcept {
  for (int i = 0; i < kCount; ++i)
    if (!std::isfinite((*this)[i])) return false;
  return sx > 0.0 && sy > 0.0;
}

double AffineParams::operator[](int i) const noexcept {
  switch (i) {
    case 0: return tx;
    case 1: return ty;
    case 2: return theta;
    case 3: return sx;
    case 4: return sy;
    default: return k;
  }
}

double& AffineParams::operator[](int i) noexcept {
  switch (i) {
    case 0: return tx;
    case 1: return ty;
    case 2: return theta;
    case 3: return sx;
    case 4: return sy;
    default: return k;
  }
}

AffineMatrix AffineMatrix::operator*(const AffineMatrix& r) const noexcept {
  const auto& a = g;
  const auto& b = r.g;
  return AffineMatrix{{a[0] * b[0] + a[1] * b[3], a[0] * b[1] + a[1] * b[4], a[0] * b[2] + a[1] * b[5] + a[2],
                       a[3] * b[0] + a[4] * b[3], a[3] * b[1] + a[4] * b[4], a[3] * b[2] + a[4] * b[5] + a[5]}};
}

AffineMatrix compose_matrix(const AffineParams& p) {
  require_valid(p);
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  return AffineMatrix{{p.sx * c, p.sy * (p.k * c - s), p.tx, p.sx * s, p.sy * (p.k * s + c), p.ty}};
}

AffineMatrix center_adjusted(const AffineParams& params, const CenterPixel& center) {
  AffineMatrix m = compose_matrix(params);
  auto& g = m.g;
  const double xt = center.x, yt = center.y;
  g[2] = g[2] - g[0] * xt - g[1] * yt + xt;
  g[5] = g[5] - g[3] * xt - g[4] * yt + yt;
  return m;
}

AffineMatrix invert(const AffineMatrix& m) {
  const double det = m.det();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) throw Error(ErrorKind::Numeric, "singular affine matrix");
  const auto& g = m.g;
  const double a = g[4] / det, b = -g[1] / det, c = -g[3] / det, d = g[0] / det;
  return AffineMatrix{{a, b, -(a * g[2] + b * g[5]), c, d, -(c * g[2] + d * g[5])}};
}

AffineParams params_from_matrix(const AffineMatrix& m, const CenterPixel& center) {
  const auto& g = m.g;
  if (!(m.det() > 0.0)) throw Error(ErrorKind::Numeric, "matrix is not orientation preserving");
  // A = R(theta) * [[sx, k sy], [0, sy]]
  AffineParams p;
  p.sx = std::hypot(g[0], g[3]);
  p.theta = std::atan2(g[3], g[0]);
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  p.sy = -s * g[1] + c * g[4];
  p.k = (c * g[1] + s * g[4]) / p.sy;
  // H v = A v + (t + c - A c)
  p.tx = g[2] - center.x + g[0] * center.x + g[1] * center.y;
  p.ty = g[5] - center.y + g[3] * center.x + g[4] * center.y;
  return p;
}

AffineParams inverse_params(const AffineParams& params, const CenterPixel& center) {
  return params_from_matrix(invert(center_adjusted(params, center)), center);
}

AffineParams scale_params_between_levels(const AffineParams& params, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorKind::Parameter, "level scale factor must be positive");
  AffineParams out = params;
  out.tx *= factor;
  out.ty *= factor;
  return out;
}

WarpResult warp(const Image2D& moving, const AffineMatrix& m, double fill) {
  const int w = moving.width(), h = moving.height();
  WarpResult out{Image2D(w, h, fill), Mask2D(w, h, false)};
  const double xmax = w - 1, ymax = h - 1;
  const auto src = moving.data();
  auto dst = out.image.data();

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double vx = m.apply_x(x, y), vy = m.apply_y(x, y);
      if (!(vx >= -kSupportSlack && vx <= xmax + kSupportSlack && vy >= -kSupportSlack && vy <= ymax + kSupportSlack)) {
        continue;
      }
      vx = std::clamp(vx, 0.0, xmax);
      vy = std::clamp(vy, 0.0, ymax);
      const int x0 = std::min(static_cast<int>(vx), std::max(w - 2, 0));
      const int y0 = std::min(static_cast<int>(vy), std::max(h - 2, 0));
      const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
      const double fx = vx - x0, fy = vy - y0;
      const std::size_t r0 = static_cast<std::size_t>(y0) * w, r1 = static_cast<std::size_t>(y1) * w;
      const double top = src[r0 + x0] + fx * (src[r0 + x1] - src[r0 + x0]);
      const double bottom = src[r1 + x0] + fx * (src[r1 + x1] - src[r1 + x0]);
      dst[static_cast<std::size_t>(y) * w + x] = top + fy * (bottom - top);
      out.mask.set(x, y, true);
    }
  }
  return out;
}

WarpResult warp(const Image2D& moving, const AffineParams& params, const CenterPixel& center, double fill) {
  return warp(moving, center_adjusted(params, center), fill);
}

std::string params_to_json(const AffineParams& p, const CenterPixel& center) {
  nlohmann::ordered_json j;
  j["tx"] = p.tx;
  j["ty"] = p.ty;
  j["theta_rad"] = p.theta;
  j["sx"] = p.sx;
  j["sy"] = p.sy;
  j["k"] = p.k;
  j["center"] = {center.x, center.y};
  return j.dump(2);
}

AffineParams params_from_json(const std::string& text, CenterPixel* center) {
  try {
    const auto j = nlohmann::json::parse(text);
    AffineParams p;
    p.tx = j.at("tx").get<double>();
    p.ty = j.at("ty").get<double>();
    p.theta = j.at("theta_rad").get<double>();
    p.sx = j.at("sx").get<double>();
    p.sy = j.at("sy").get<double>();
    p.k = j.at("k").get<double>();
    if (center && j.contains("center")) {
      center->x = j["center"].at(0).get<double>();
      center->y = j["center"].at(1).get<double>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Format, std::string("bad affine parameter JSON: ") + e.what());
  }
}

}  // namespace wavereg
