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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "wavereg/error.hpp"
#include "wavereg/transform.hpp"

namespace wavereg {
namespace {

using M3 = std::array<std::array<double, 3>, 3>;

M3 mul(const M3& a, const M3& b) {
  M3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Explicit product of the four elementary matrices.
M3 chain(const AffineParams& p) {
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  const M3 t{{{1, 0, p.tx}, {0, 1, p.ty}, {0, 0, 1}}};
  const M3 r{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  const M3 k{{{1, p.k, 0}, {0, 1, 0}, {0, 0, 1}}};
  const M3 sc{{{p.sx, 0, 0}, {0, p.sy, 0}, {0, 0, 1}}};
  return mul(mul(mul(t, r), k), sc);
}

AffineParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> t(-20, 20), a(-3, 3), s(0.5, 1.8), k(-0.4, 0.4);
  return {t(rng), t(rng), a(rng), s(rng), s(rng), k(rng)};
}

void expect_matrix_near(const AffineMatrix& a, const AffineMatrix& b, double tol) {
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(a.g[i], b.g[i], tol) << "entry " << i;
}

Image2D smooth_blob(int w, int h) {
  Image2D img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double dx = x - 0.45 * w, dy = y - 0.55 * h;
      img(x, y) = 40 + 180 * std::exp(-(dx * dx + 0.6 * dy * dy) / (2 * 9.0 * 9.0));
    }
  return img;
}

TEST(ComposeMatrix, MatchesElementaryChain) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const AffineParams p = random_params(rng);
    const M3 ref = chain(p);
    const AffineMatrix g = compose_matrix(p);
    EXPECT_NEAR(g.g[0], ref[0][0], 1e-12);
    EXPECT_NEAR(g.g[1], ref[0][1], 1e-12);
    EXPECT_NEAR(g.g[2], ref[0][2], 1e-12);
    EXPECT_NEAR(g.g[3], ref[1][0], 1e-12);
    EXPECT_NEAR(g.g[4], ref[1][1], 1e-12);
    EXPECT_NEAR(g.g[5], ref[1][2], 1e-12);
  }
}

TEST(ComposeMatrix, PureTranslation) {
  const AffineMatrix g = compose_matrix({3, -2, 0, 1, 1, 0});
  expect_matrix_near(g, AffineMatrix{{1, 0, 3, 0, 1, -2}}, 0);
}

TEST(ComposeMatrix, QuarterTurn) {
  const AffineMatrix g = compose_matrix({0, 0, std::numbers::pi / 2, 1, 1, 0});
  expect_matrix_near(g, AffineMatrix{{0, -1, 0, 1, 0, 0}}, 1e-15);
}

TEST(CenterAdjusted, QuarterTurnAboutCenter) {
  const AffineMatrix h = center_adjusted({0, 0, std::numbers::pi / 2, 1, 1, 0}, {10, 10});
  expect_matrix_near(h, AffineMatrix{{0, -1, 20, 1, 0, 0}}, 1e-12);
}

TEST(CenterAdjusted, ClosedFormTranslation) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const AffineParams p = random_params(rng);
    const CenterPixel c{13.5, 7.0};
    const double cs = std::cos(p.theta), sn = std::sin(p.theta);
    const double h3 = p.tx - p.sx * cs * c.x - p.sy * (p.k * cs - sn) * c.y + c.x;
    const double h6 = p.ty - p.sx * sn * c.x - p.sy * (p.k * sn + cs) * c.y + c.y;
    const AffineMatrix h = center_adjusted(p, c);
    EXPECT_NEAR(h.g[2], h3, 1e-10);
    EXPECT_NEAR(h.g[5], h6, 1e-10);
    // With no translation the center is a fixed point.
    AffineParams lin = p;
    lin.tx = lin.ty = 0;
    const AffineMatrix l = center_adjusted(lin, c);
    EXPECT_NEAR(l.apply_x(c.x, c.y), c.x, 1e-10);
    EXPECT_NEAR(l.apply_y(c.x, c.y), c.y, 1e-10);
  }
}

TEST(Invert, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const AffineMatrix h = center_adjusted(random_params(rng), {31.5, 31.5});
    expect_matrix_near(h * invert(h), AffineMatrix::identity(), 1e-9);
    expect_matrix_near(invert(h) * h, AffineMatrix::identity(), 1e-9);
  }
}

TEST(Invert, Singular) { EXPECT_THROW(invert(AffineMatrix{{1, 2, 0, 2, 4, 0}}), Error); }

TEST(ParamsFromMatrix, RoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    AffineParams p = random_params(rng);
    p.theta = std::remainder(p.theta, 2 * std::numbers::pi);
    const CenterPixel c{20, 11.5};
    const AffineParams q = params_from_matrix(center_adjusted(p, c), c);
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(q[j], p[j], 1e-9) << j;
  }
}

TEST(InverseParams, ComposesToIdentity) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const AffineParams p = random_params(rng);
    const CenterPixel c{15.5, 15.5};
    const AffineMatrix m = center_adjusted(p, c) * center_adjusted(inverse_params(p, c), c);
    expect_matrix_near(m, AffineMatrix::identity(), 1e-9);
  }
}

TEST(ScaleParams, TranslationOnly) {
  const AffineParams p{8, -6, 0.3, 1.1, 0.9, 0.05};
  const AffineParams h = scale_params_between_levels(p, 0.5);
  EXPECT_EQ(h.tx, 4);
  EXPECT_EQ(h.ty, -3);
  EXPECT_EQ(h.theta, p.theta);
  EXPECT_EQ(h.sx, p.sx);
  EXPECT_EQ(h.sy, p.sy);
  EXPECT_EQ(h.k, p.k);
}

TEST(AffineParams, Validity) {
  EXPECT_TRUE(AffineParams::identity().valid());
  EXPECT_FALSE((AffineParams{0, 0, 0, 0, 1, 0}.valid()));
  EXPECT_FALSE((AffineParams{0, 0, 0, 1, -1, 0}.valid()));
  EXPECT_FALSE((AffineParams{std::nan(""), 0, 0, 1, 1, 0}.valid()));
}

TEST(Warp, IdentityIsExact) {
  std::mt19937_64 rng(10);
  const Image2D img = testing::random_image(17, 12, rng);
  const WarpResult r = warp(img, AffineParams::identity(), CenterPixel::of(17, 12));
  EXPECT_EQ(r.mask.count(), img.size());
  for (std::size_t i = 0; i < img.size(); ++i) EXPECT_NEAR(r.image.data()[i], img.data()[i], 1e-12);
}

TEST(Warp, PositiveTxShiftsLeft) {
  const Image2D img = testing::ramp_x(16, 16);
  const WarpResult r = warp(img, AffineParams{5, 0, 0, 1, 1, 0}, CenterPixel::of(16, 16), -1.0);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) {
      if (x < 11) {
        EXPECT_TRUE(r.mask(x, y));
        EXPECT_NEAR(r.image(x, y), img(x + 5, y), 1e-12);
      } else {
        EXPECT_FALSE(r.mask(x, y));
        EXPECT_EQ(r.image(x, y), -1.0);
      }
    }
}

TEST(Warp, QuarterTurnIsPermutation) {
  std::mt19937_64 rng(11);
  const Image2D img = testing::random_image(16, 16, rng);
  const WarpResult r = warp(img, AffineParams{0, 0, std::numbers::pi / 2, 1, 1, 0}, CenterPixel::of(16, 16));
  EXPECT_EQ(r.mask.count(), 256u);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) EXPECT_NEAR(r.image(x, y), img(15 - y, x), 1e-9);
}

TEST(Warp, HalfPixelIsBilinear) {
  const Image2D img = testing::ramp_x(8, 8);
  const WarpResult r = warp(img, AffineParams{0.5, 0.25, 0, 1, 1, 0}, CenterPixel::of(8, 8));
  // A ramp is reproduced exactly by bilinear interpolation.
  EXPECT_NEAR(r.image(2, 3), 10 * 2.5 + 3.25, 1e-12);
  EXPECT_FALSE(r.mask(7, 0));
}

TEST(Warp, ForwardThenInverseOnSmoothImage) {
  const Image2D img = smooth_blob(64, 64);
  const CenterPixel c = CenterPixel::of(64, 64);
  const AffineParams p{2.3, -1.7, 0.08, 1.04, 0.97, 0.02};
  const WarpResult a = warp(img, p, c);
  const WarpResult b = warp(a.image, inverse_params(p, c), c);
  int checked = 0;
  for (int y = 8; y < 56; ++y)
    for (int x = 8; x < 56; ++x) {
      if (!b.mask(x, y)) continue;
      ++checked;
      EXPECT_LE(std::abs(b.image(x, y) - img(x, y)), 2.0);
    }
  EXPECT_GT(checked, 1500);
}

TEST(Warp, RejectsInvalidParams) {
  EXPECT_THROW(warp(Image2D(4, 4), AffineParams{0, 0, 0, -1, 1, 0}, CenterPixel::of(4, 4)), Error);
}

TEST(ParamsJson, RoundTrip) {
  const AffineParams p{1.25, -3.5, 0.1234567890123, 1.01, 0.99, -0.02};
  CenterPixel c;
  const AffineParams q = params_from_json(params_to_json(p, {127.5, 63.5}), &c);
  EXPECT_EQ(q, p);
  EXPECT_EQ(c.x, 127.5);
  EXPECT_EQ(c.y, 63.5);
}

TEST(ParamsJson, MissingKey) { EXPECT_THROW(params_from_json(R"({"tx":1})"), Error); }

}  // namespace
}  // namespace wavereg
