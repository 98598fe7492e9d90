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
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "test_util.hpp"
#include "wavereg/error.hpp"
#include "wavereg/fixtures.hpp"
#include "wavereg/netpbm.hpp"

namespace wavereg {
namespace {

FixtureSpec spec_with(AffineParams truth, RemapMode remap = {}, double noise = 0.0, std::uint64_t seed = 0) {
  FixtureSpec s;
  s.size = 96;
  s.truth = truth;
  s.remap = remap;
  s.noise_sigma = noise;
  s.seed = seed;
  return s;
}

TEST(Fixtures, IdentityPairIsExact) {
  const FixturePair p = generate_pair(spec_with({}));
  ASSERT_TRUE(p.fixed.same_shape(p.moving));
  for (std::size_t i = 0; i < p.fixed.size(); ++i) EXPECT_EQ(p.fixed.data()[i], p.moving.data()[i]);
  EXPECT_EQ(p.truth, AffineParams::identity());
}

TEST(Fixtures, TranslationMatchesDirectShift) {
  const FixturePair p = generate_pair(spec_with({8, -5, 0, 1, 1, 0}));
  // moving(u) = fixed(u - t), so content sits 8 px right of and 5 px above its fixed position.
  for (int y = 10; y < 86; ++y)
    for (int x = 10; x < 86; ++x) EXPECT_NEAR(p.moving(x, y), p.fixed(x - 8, y + 5), 1e-9);
  EXPECT_NEAR(p.truth_inverse.tx, -8, 1e-12);
  EXPECT_NEAR(p.truth_inverse.ty, 5, 1e-12);
}

TEST(Fixtures, WarpByTruthRealigns) {
  const AffineParams truth{3, 2, 0.05, 1.02, 0.98, 0.01};
  const FixturePair p = generate_pair(spec_with(truth, RemapMode::identity(), 0.0, 4));
  const WarpResult back = warp(p.moving, truth, p.center);
  double err = 0;
  int n = 0;
  for (int y = 16; y < 80; ++y)
    for (int x = 16; x < 80; ++x)
      if (back.mask(x, y)) err += std::abs(back.image(x, y) - p.fixed(x, y)), ++n;
  ASSERT_GT(n, 3000);
  // Two bilinear resamplings of a piecewise-flat phantom; edges dominate.
  EXPECT_LT(err / n, 4.0);
}

TEST(Fixtures, RemapAppliedToMovingOnly) {
  const FixturePair p = generate_pair(spec_with({}, RemapMode::invert()));
  const auto [lo, hi] = p.fixed.range();
  for (std::size_t i = 0; i < p.fixed.size(); ++i) EXPECT_NEAR(p.moving.data()[i], lo + hi - p.fixed.data()[i], 1e-9);
}

TEST(Fixtures, Deterministic) {
  const FixtureSpec s = spec_with({2, 1, 0.1, 1, 1, 0}, RemapMode::power(2), 0.02, 17);
  const FixturePair a = generate_pair(s), b = generate_pair(s);
  for (std::size_t i = 0; i < a.moving.size(); ++i) ASSERT_EQ(a.moving.data()[i], b.moving.data()[i]);
  FixtureSpec other = s;
  other.seed = 18;
  const FixturePair c = generate_pair(other);
  bool differs = false;
  for (std::size_t i = 0; i < a.moving.size() && !differs; ++i) differs = a.moving.data()[i] != c.moving.data()[i];
  EXPECT_TRUE(differs);
}

TEST(Fixtures, NoiseScale) {
  const FixturePair clean = generate_pair(spec_with({}));
  const FixturePair noisy = generate_pair(spec_with({}, {}, 0.05, 3));
  double s2 = 0;
  for (std::size_t i = 0; i < clean.moving.size(); ++i) {
    const double d = noisy.moving.data()[i] - clean.moving.data()[i];
    s2 += d * d;
  }
  const double sigma = std::sqrt(s2 / clean.moving.size());
  EXPECT_NEAR(sigma, 0.05 * 255, 0.05 * 255 * 0.1);
}

TEST(Patterns, PhantomHasManyPlateaus) {
  const Image2D img = render_pattern(BasePattern::PhantomEllipses, 128, 0);
  const auto [lo, hi] = img.range();
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 255.0);
  std::map<double, int> counts;
  for (double v : img.data()) ++counts[v];
  int plateaus = 0;
  for (const auto& [v, n] : counts)
    if (n >= 50) ++plateaus;
  EXPECT_GE(plateaus, 8);
}

TEST(Patterns, Checker) {
  const Image2D img = render_pattern(BasePattern::Checker, 64, 0);
  EXPECT_EQ(img(0, 0), 40.0);
  EXPECT_EQ(img(8, 0), 215.0);
  EXPECT_EQ(img(8, 8), 40.0);
}

TEST(Patterns, NoiseIsSeeded) {
  const Image2D a = render_pattern(BasePattern::NoiseSmoothed, 64, 1);
  const Image2D b = render_pattern(BasePattern::NoiseSmoothed, 64, 1);
  const Image2D c = render_pattern(BasePattern::NoiseSmoothed, 64, 2);
  EXPECT_EQ(std::vector<double>(a.data().begin(), a.data().end()), std::vector<double>(b.data().begin(), b.data().end()));
  EXPECT_NE(a(10, 10), c(10, 10));
}

TEST(Parsing, PatternsAndRemaps) {
  EXPECT_EQ(parse_pattern("phantom"), BasePattern::PhantomEllipses);
  EXPECT_EQ(parse_pattern("noise_smoothed"), BasePattern::NoiseSmoothed);
  EXPECT_FALSE(parse_pattern("stripes"));
  ASSERT_TRUE(parse_remap("gamma:2.5"));
  EXPECT_EQ(parse_remap("gamma:2.5")->gamma, 2.5);
  EXPECT_EQ(parse_remap("invert")->kind, RemapKind::Invert);
  EXPECT_FALSE(parse_remap("gamma:"));
  EXPECT_FALSE(parse_remap("gamma:-1"));
  EXPECT_FALSE(parse_remap("gamma:2x"));
}

TEST(Fixtures, Errors) {
  FixtureSpec s = spec_with({});
  s.size = 63;
  EXPECT_THROW(generate_pair(s), Error);
  try {
    generate_pair(spec_with({80, 0, 0, 1, 1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fixture unusable"), std::string::npos);
  }
  EXPECT_THROW(generate_pair(spec_with({0, 0, 0, 1, 1, 0}, {}, -1.0)), Error);
}

TEST(Fixtures, WriteFixture) {
  testing::TempDir dir("fixture");
  const FixtureSpec s = spec_with({4, -2, 0.1, 1, 1, 0}, RemapMode::invert(), 0.01, 5);
  const FixturePair p = generate_pair(s);
  write_fixture(s, p, dir / "pair");
  const Image2D fixed = load_pgm(dir / "pair" / "fixed.pgm");
  EXPECT_EQ(fixed.width(), 96);
  std::ifstream in(dir / "pair" / "truth.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["truth"]["tx"].get<double>(), 4.0);
  EXPECT_NEAR(j["truth_inverse"]["tx"].get<double>(), p.truth_inverse.tx, 1e-12);
  EXPECT_EQ(j["center"][0].get<double>(), 47.5);
  EXPECT_EQ(j["spec"]["remap"].get<std::string>(), "invert");
  EXPECT_EQ(j["spec"]["seed"].get<int>(), 5);
}

}  // namespace
}  // namespace wavereg
