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

#include "wavereg/pipeline.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wavereg/error.hpp"
#include "wavereg/pyramid.hpp"
#include "wavereg/wavelet.hpp"

namespace wavereg {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Pyramid: return "pyramid";
    case Method::Wavelet: return "wavelet";
    case Method::DwtPyramid: return "dwt-pyramid";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "pyramid") return Method::Pyramid;
  if (name == "wavelet") return Method::Wavelet;
  if (name == "dwt-pyramid" || name == "dwt_pyramid") return Method::DwtPyramid;
  return std::nullopt;
}

void RegistrationConfig::validate() const {
  if (pyramid_levels < 1) throw Error(ErrorKind::Parameter, "pyramid levels must be at least 1");
  metric.validate();
  optimizer.validate();
  if (!initial.valid()) throw Error(ErrorKind::Parameter, "initial parameters out of domain");
}

namespace {

// Channels[c] of one resolution level. Spatial methods carry one channel, the
// sub-band methods carry LL, LH, HL, HH in that order.
using Channels = std::vector<Image2D>;

struct LevelSet {
  std::vector<Channels> fixed;   // [level][channel], level 0 finest
  std::vector<Channels> moving;
  double domain_scale = 1.0;     // full-resolution pixels per level-0 pixel
};

struct MultiLevelOutcome {
  AffineParams domain_params;  // level-0 coordinates of the optimized domain
  double max_value = -std::numeric_limits<double>::infinity();
  std::vector<LevelTrace> traces;
};

void check_inputs(const Image2D& fixed, const Image2D& moving, const RegistrationConfig& config) {
  config.validate();
  if (!fixed.same_shape(moving)) {
    throw Error(ErrorKind::Dimension, "fixed and moving images must have equal dimensions");
  }
  if (fixed.width() < kMinRegistrationSize || fixed.height() < kMinRegistrationSize) {
    throw Error(ErrorKind::Parameter, "images must be at least " + std::to_string(kMinRegistrationSize) + "x" +
                                          std::to_string(kMinRegistrationSize));
  }
}

double channel_objective(const Channels& fixed, const Channels& moving, std::size_t used_channels,
                         const AffineParams& p, const MetricConfig& metric) {
  const Image2D& ref = fixed.front();
  const AffineMatrix m = center_adjusted(p, CenterPixel::of(ref.width(), ref.height()));
  double sum = 0.0;
  for (std::size_t c = 0; c < used_channels; ++c) {
    const WarpResult w = warp(moving[c], m);
    if (w.mask.count() == 0) return std::numeric_limits<double>::quiet_NaN();
    sum += mutual_information(joint_histogram(fixed[c], w.image, w.mask, metric));
  }
  return sum;
}

MultiLevelOutcome run_levels(const LevelSet& set, std::size_t used_channels, const RegistrationConfig& config) {
  const int levels = static_cast<int>(set.fixed.size());
  MultiLevelOutcome out;

  AffineParams start = scale_params_between_levels(config.initial, 1.0 / (set.domain_scale * std::ldexp(1.0, levels - 1)));
  for (int level = levels - 1; level >= 0; --level) {
    const Channels& fixed = set.fixed[level];
    const Channels& moving = set.moving[level];
    Objective objective = [&](const AffineParams& p) {
      return channel_objective(fixed, moving, used_channels, p, config.metric);
    };

    OptimizerConfig opt = config.optimizer;
    opt.seed = config.optimizer.seed + static_cast<std::uint64_t>(level);
    opt.active = config.parameter_mask;

    if (!std::isfinite(objective(start))) throw Error(ErrorKind::Registration, "registration lost overlap");
    OptimizeResult r = optimize(objective, start, opt);

    out.max_value = std::max(out.max_value, r.trace.best_value);
    out.traces.push_back({level, set.domain_scale * std::ldexp(1.0, level), start, std::move(r.trace)});
    out.domain_params = r.params;
    if (level > 0) start = scale_params_between_levels(r.params, 2.0);
  }
  return out;
}

Channels band_channels(const SubBands& b) { return {b.ll, b.lh, b.hl, b.hh}; }

std::size_t used_band_channels(const RegistrationConfig& config) {
  return config.subband_objective == SubbandObjective::LlOnly ? 1 : 4;
}

RegistrationResult finish(const Image2D& fixed, WarpResult warped, const MultiLevelOutcome& outcome, double domain_scale,
                          const RegistrationConfig& config) {
  RegistrationResult result;
  result.method = config.method;
  result.params = scale_params_between_levels(outcome.domain_params, domain_scale);
  result.registered = std::move(warped.image);
  result.mask = std::move(warped.mask);
  result.max_mi_bits = outcome.max_value;
  result.traces = outcome.traces;
  const Metrics m = evaluate(fixed, result, config.metric);
  result.final_mi_bits = m.mi_bits;
  result.cc = m.cc;
  result.overlap_pixels = m.overlap_pixels;
  return result;
}

}  // namespace

WarpResult warp_via_subbands(const SubBands& moving, const AffineParams& band_params) {
  const AffineMatrix m = center_adjusted(band_params, CenterPixel::of(moving.band_width(), moving.band_height()));
  WarpResult ll = warp(moving.ll, m);
  SubBands warped{std::move(ll.image), warp(moving.lh, m).image, warp(moving.hl, m).image, warp(moving.hh, m).image,
                  moving.original_width, moving.original_height};

  WarpResult out{idwt2(warped), Mask2D(moving.original_width, moving.original_height, false)};
  for (int y = 0; y < moving.original_height; ++y)
    for (int x = 0; x < moving.original_width; ++x) out.mask.set(x, y, ll.mask(x / 2, y / 2));
  return out;
}

RegistrationResult register_pyramid(const Image2D& fixed, const Image2D& moving, const RegistrationConfig& config) {
  check_inputs(fixed, moving, config);
  const GaussianPyramid fp = build_pyramid(fixed, config.pyramid_levels);
  const GaussianPyramid mp = build_pyramid(moving, config.pyramid_levels);

  LevelSet set;
  for (std::size_t l = 0; l < fp.levels.size(); ++l) {
    set.fixed.push_back({fp.levels[l]});
    set.moving.push_back({mp.levels[l]});
  }
  const MultiLevelOutcome outcome = run_levels(set, 1, config);
  return finish(fixed, warp(moving, outcome.domain_params, CenterPixel::of(moving.width(), moving.height())), outcome,
                1.0, config);
}

RegistrationResult register_wavelet(const Image2D& fixed, const Image2D& moving, const RegistrationConfig& config) {
  check_inputs(fixed, moving, config);
  const SubBands fb = dwt2(fixed);
  const SubBands mb = dwt2(moving);

  LevelSet set;
  set.domain_scale = 2.0;
  set.fixed.push_back(band_channels(fb));
  set.moving.push_back(band_channels(mb));
  const MultiLevelOutcome outcome = run_levels(set, used_band_channels(config), config);
  return finish(fixed, warp_via_subbands(mb, outcome.domain_params), outcome, 2.0, config);
}

RegistrationResult register_dwt_pyramid(const Image2D& fixed, const Image2D& moving, const RegistrationConfig& config) {
  check_inputs(fixed, moving, config);
  const SubBands fb = dwt2(fixed);
  const SubBands mb = dwt2(moving);
  const Channels fc = band_channels(fb), mc = band_channels(mb);

  std::vector<GaussianPyramid> fpyr, mpyr;
  for (std::size_t c = 0; c < fc.size(); ++c) {
    fpyr.push_back(build_pyramid(fc[c], config.pyramid_levels));
    mpyr.push_back(build_pyramid(mc[c], config.pyramid_levels));
  }

  LevelSet set;
  set.domain_scale = 2.0;
  for (std::size_t l = 0; l < fpyr.front().levels.size(); ++l) {
    Channels f, m;
    for (std::size_t c = 0; c < fc.size(); ++c) {
      f.push_back(fpyr[c].levels[l]);
      m.push_back(mpyr[c].levels[l]);
    }
    set.fixed.push_back(std::move(f));
    set.moving.push_back(std::move(m));
  }
  const MultiLevelOutcome outcome = run_levels(set, used_band_channels(config), config);
  return finish(fixed, warp_via_subbands(mb, outcome.domain_params), outcome, 2.0, config);
}

RegistrationResult register_images(const Image2D& fixed, const Image2D& moving, const RegistrationConfig& config) {
  switch (config.method) {
    case Method::Pyramid: return register_pyramid(fixed, moving, config);
    case Method::Wavelet: return register_wavelet(fixed, moving, config);
    case Method::DwtPyramid: return register_dwt_pyramid(fixed, moving, config);
  }
  throw Error(ErrorKind::Parameter, "unknown registration method");
}

Metrics evaluate(const Image2D& fixed, const RegistrationResult& result, const MetricConfig& metric) {
  if (!fixed.same_shape(result.registered) || !result.mask.same_shape(fixed)) {
    throw Error(ErrorKind::Dimension, "registered image does not match the fixed image");
  }
  Metrics m;
  m.overlap_pixels = result.mask.count();
  if (m.overlap_pixels == 0) throw Error(ErrorKind::Numeric, "no overlap");
  m.mi_bits = mutual_information(joint_histogram(fixed, result.registered, result.mask, metric));
  m.cc = correlation_coefficient(fixed, result.registered, result.mask);
  return m;
}

}  // namespace wavereg
