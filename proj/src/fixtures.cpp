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

#include "wavereg/fixtures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavereg/error.hpp"
#include "wavereg/netpbm.hpp"

namespace wavereg {

namespace {

struct Ellipse {
  double cx, cy;  // normalized coordinates in [-1, 1], y down
  double a, b;    // semi-axes
  double angle_deg;
  double value;   // additive intensity
};

// Head-like phantom: a skull ring around overlapping lesions, deliberately
// asymmetric so no rotation or reflection maps it onto itself.
constexpr Ellipse kPhantom[] = {
    {0.00, 0.00, 0.72, 0.88, 0, 100},   {0.00, -0.02, 0.66, 0.82, 0, -40}, {0.22, 0.00, 0.12, 0.32, -18, 70},
    {-0.24, 0.02, 0.16, 0.38, 18, 40},  {0.00, 0.38, 0.22, 0.20, 0, 110},  {0.00, -0.15, 0.07, 0.07, 0, 150},
    {-0.10, -0.55, 0.10, 0.06, 30, 130}, {0.15, -0.50, 0.06, 0.10, 0, -30}, {0.35, 0.45, 0.08, 0.12, 40, 80},
    {-0.38, -0.30, 0.09, 0.05, -25, 160}, {0.08, 0.12, 0.05, 0.04, 0, 180},
};

constexpr int kSupersample = 4;

Image2D render_phantom(int size) {
  Image2D img(size, size);
  const double half = size / 2.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double acc = 0.0;
      for (int sy = 0; sy < kSupersample; ++sy) {
        for (int sx = 0; sx < kSupersample; ++sx) {
          const double px = (x + (sx + 0.5) / kSupersample) / half - 1.0;
          const double py = (y + (sy + 0.5) / kSupersample) / half - 1.0;
          for (const Ellipse& e : kPhantom) {
            const double t = e.angle_deg * std::numbers::pi / 180.0;
            const double dx = px - e.cx, dy = py - e.cy;
            const double u = (dx * std::cos(t) + dy * std::sin(t)) / e.a;
            const double v = (-dx * std::sin(t) + dy * std::cos(t)) / e.b;
            if (u * u + v * v <= 1.0) acc += e.value;
          }
        }
      }
      img(x, y) = acc / (kSupersample * kSupersample);
    }
  }
  return img;
}

Image2D render_checker(int size) {
  Image2D img(size, size);
  const int cell = std::max(size / 8, 1);
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) img(x, y) = ((x / cell + y / cell) % 2) ? 215.0 : 40.0;
  return img;
}

// Three box passes approximate a Gaussian blur.
Image2D box_blur(const Image2D& in, int radius) {
  const int w = in.width(), h = in.height();
  auto clampi = [](int v, int n) { return std::clamp(v, 0, n - 1); };
  Image2D tmp(w, h), out(w, h);
  const double norm = 1.0 / (2 * radius + 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) s += in(clampi(x + d, w), y);
      tmp(x, y) = s * norm;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) s += tmp(x, clampi(y + d, h));
      out(x, y) = s * norm;
    }
  return out;
}

Image2D render_noise(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Image2D img(size, size);
  for (double& v : img.data()) v = normal(rng);
  const int radius = std::max(size / 32, 1);
  for (int pass = 0; pass < 3; ++pass) img = box_blur(img, radius);
  return img;
}

Image2D normalize_to_255(Image2D img) {
  const auto [lo, hi] = img.range();
  if (hi > lo)
    for (double& v : img.data()) v = (v - lo) / (hi - lo) * 255.0;
  return img;
}

nlohmann::ordered_json params_object(const AffineParams& p) {
  nlohmann::ordered_json j;
  j["tx"] = p.tx;
  j["ty"] = p.ty;
  j["theta_rad"] = p.theta;
  j["sx"] = p.sx;
  j["sy"] = p.sy;
  j["k"] = p.k;
  return j;
}

}  // namespace

const char* to_string(BasePattern p) noexcept {
  switch (p) {
    case BasePattern::PhantomEllipses: return "phantom_ellipses";
    case BasePattern::Checker: return "checker";
    case BasePattern::NoiseSmoothed: return "noise_smoothed";
  }
  return "unknown";
}

std::optional<BasePattern> parse_pattern(std::string_view name) noexcept {
  if (name == "phantom" || name == "phantom_ellipses") return BasePattern::PhantomEllipses;
  if (name == "checker") return BasePattern::Checker;
  if (name == "noise" || name == "noise_smoothed") return BasePattern::NoiseSmoothed;
  return std::nullopt;
}

std::string to_string(const RemapMode& mode) {
  switch (mode.kind) {
    case RemapKind::Identity: return "identity";
    case RemapKind::Invert: return "invert";
    case RemapKind::Gamma: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, mode.gamma);
      return "gamma:" + std::string(buf, ec == std::errc() ? end : buf);
    }
    case RemapKind::NegateLog: return "negate-log";
  }
  return "identity";
}

std::optional<RemapMode> parse_remap(std::string_view text) noexcept {
  if (text == "identity" || text == "none") return RemapMode::identity();
  if (text == "invert") return RemapMode::invert();
  if (text == "negate-log" || text == "negate_log") return RemapMode::negate_log();
  if (text.starts_with("gamma:")) {
    const auto digits = text.substr(6);
    double g = 0.0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), g);
    if (ec != std::errc() || end != digits.data() + digits.size() || !(g > 0.0)) return std::nullopt;
    return RemapMode::power(g);
  }
  return std::nullopt;
}

void FixtureSpec::validate() const {
  if (size < kMinFixtureSize) {
    throw Error(ErrorKind::Parameter, "fixture size must be at least " + std::to_string(kMinFixtureSize));
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorKind::Parameter, "noise sigma must be nonnegative");
  }
  if (!truth.valid()) throw Error(ErrorKind::Parameter, "truth transform out of domain");
  if (remap.kind == RemapKind::Gamma && !(remap.gamma > 0.0)) throw Error(ErrorKind::Parameter, "gamma must be positive");
}

Image2D render_pattern(BasePattern pattern, int size, std::uint64_t seed) {
  switch (pattern) {
    case BasePattern::PhantomEllipses: return normalize_to_255(render_phantom(size));
    case BasePattern::Checker: return render_checker(size);
    case BasePattern::NoiseSmoothed: return normalize_to_255(render_noise(size, seed));
  }
  throw Error(ErrorKind::Parameter, "unknown pattern");
}

FixturePair generate_pair(const FixtureSpec& spec) {
  spec.validate();
  FixturePair pair;
  pair.fixed = render_pattern(spec.base_pattern, spec.size, spec.seed);
  pair.truth = spec.truth;
  pair.center = CenterPixel::of(spec.size, spec.size);
  pair.truth_inverse = inverse_params(spec.truth, pair.center);

  const Image2D remapped = remap_intensity(pair.fixed, spec.remap);
  WarpResult w = warp(remapped, invert(center_adjusted(spec.truth, pair.center)));
  if (2 * w.mask.count() < w.mask.size()) {
    throw Error(ErrorKind::Parameter, "fixture unusable: truth transform moves more than half the pixels out of bounds");
  }

  if (spec.noise_sigma > 0.0) {
    const auto [lo, hi] = remapped.range();
    const double sigma = spec.noise_sigma * (hi - lo);
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, sigma);
    for (double& v : w.image.data()) v += normal(rng);
  }
  pair.moving = std::move(w.image);
  return pair;
}

std::string fixture_truth_json(const FixtureSpec& spec, const FixturePair& pair) {
  nlohmann::ordered_json j;
  j["truth"] = params_object(pair.truth);
  j["truth_inverse"] = params_object(pair.truth_inverse);
  j["center"] = {pair.center.x, pair.center.y};
  j["convention"] =
      "transforms map fixed pixel coordinates to moving pixel coordinates about center; "
      "warping moving by truth realigns it with fixed; moving was built by warping the remapped "
      "fixed image by truth_inverse";
  nlohmann::ordered_json s;
  s["pattern"] = to_string(spec.base_pattern);
  s["size"] = spec.size;
  s["remap"] = to_string(spec.remap);
  s["noise_sigma"] = spec.noise_sigma;
  s["seed"] = spec.seed;
  j["spec"] = s;
  return j.dump(2);
}

void write_fixture(const FixtureSpec& spec, const FixturePair& pair, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  save_pgm(pair.fixed, dir / "fixed.pgm");
  save_pgm(pair.moving, dir / "moving.pgm");
  std::ofstream out(dir / "truth.json");
  if (!out) throw Error(ErrorKind::Io, "cannot open " + (dir / "truth.json").string() + " for writing");
  out << fixture_truth_json(spec, pair) << '\n';
  if (!out) throw Error(ErrorKind::Io, "failed writing " + (dir / "truth.json").string());
}

}  // namespace wavereg
