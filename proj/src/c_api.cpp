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

#include "wavereg/wavereg.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "wavereg/error.hpp"
#include "wavereg/fixtures.hpp"
#include "wavereg/netpbm.hpp"
#include "wavereg/pipeline.hpp"
#include "wavereg/report.hpp"

struct wr_image {
  wavereg::Image2D image;
};

struct wr_mask {
  wavereg::Mask2D mask;
};

struct wr_config {
  wavereg::RegistrationConfig config;
};

struct wr_result {
  wavereg::RegistrationResult result;
};

namespace {

thread_local std::string g_last_error;

wr_status status_of(wavereg::ErrorKind kind) {
  using wavereg::ErrorKind;
  switch (kind) {
    case ErrorKind::Parameter: return WR_ERR_PARAMETER;
    case ErrorKind::Io: return WR_ERR_IO;
    case ErrorKind::Format: return WR_ERR_FORMAT;
    case ErrorKind::Dimension: return WR_ERR_DIMENSION;
    case ErrorKind::Numeric: return WR_ERR_NUMERIC;
    case ErrorKind::Registration: return WR_ERR_REGISTRATION;
  }
  return WR_ERR_INTERNAL;
}

wr_status fail(wr_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
wr_status guarded(F&& body) {
  try {
    body();
    return WR_OK;
  } catch (const wavereg::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WR_ERR_INTERNAL, "unknown error");
  }
}

wavereg::AffineParams to_params(const wr_params& p) { return {p.tx, p.ty, p.theta, p.sx, p.sy, p.k}; }
wr_params from_params(const wavereg::AffineParams& p) { return {p.tx, p.ty, p.theta, p.sx, p.sy, p.k}; }

wavereg::FixtureSpec to_spec(const wr_fixture_spec& s) {
  using namespace wavereg;
  FixtureSpec spec;
  const auto pattern = parse_pattern(s.pattern ? s.pattern : "phantom");
  if (!pattern) throw Error(ErrorKind::Parameter, std::string("unknown pattern '") + s.pattern + "'");
  const auto remap = parse_remap(s.remap ? s.remap : "identity");
  if (!remap) throw Error(ErrorKind::Parameter, std::string("unknown remap '") + s.remap + "'");
  spec.base_pattern = *pattern;
  spec.remap = *remap;
  spec.size = s.size;
  spec.truth = to_params(s.truth);
  spec.noise_sigma = s.noise_sigma;
  spec.seed = s.seed;
  return spec;
}

std::vector<wavereg::ManifestEntry> pairs_from(const char* source) {
  const std::filesystem::path p(source);
  return std::filesystem::is_directory(p) ? wavereg::scan_fixture_dir(p) : wavereg::read_manifest(p);
}

#define WR_REQUIRE(cond, what) \
  if (!(cond)) return fail(WR_ERR_PARAMETER, what)

}  // namespace

extern "C" {

const char* wr_version(void) { return "0.1.0"; }

const char* wr_last_error(void) { return g_last_error.c_str(); }

const char* wr_status_name(wr_status status) {
  switch (status) {
    case WR_OK: return "ok";
    case WR_ERR_PARAMETER: return "parameter error";
    case WR_ERR_IO: return "i/o error";
    case WR_ERR_FORMAT: return "format error";
    case WR_ERR_DIMENSION: return "dimension mismatch";
    case WR_ERR_NUMERIC: return "numeric error";
    case WR_ERR_REGISTRATION: return "registration failed";
    case WR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

wr_params wr_params_identity(void) { return from_params(wavereg::AffineParams::identity()); }

wr_status wr_image_create(int width, int height, const double* data, wr_image** out) {
  WR_REQUIRE(out, "null output handle");
  WR_REQUIRE(data, "null image data");
  return guarded([&] {
    const std::size_t n = static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0));
    *out = new wr_image{wavereg::Image2D(width, height, std::vector<double>(data, data + n))};
  });
}

wr_status wr_image_load_pgm(const char* path, wr_image** out) {
  WR_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new wr_image{wavereg::load_pgm(path)}; });
}

wr_status wr_image_save_pgm(const wr_image* image, const char* path, int maxval) {
  WR_REQUIRE(image && path, "null argument");
  return guarded([&] { wavereg::save_pgm(image->image, path, maxval); });
}

int wr_image_width(const wr_image* image) { return image ? image->image.width() : 0; }
int wr_image_height(const wr_image* image) { return image ? image->image.height() : 0; }

wr_status wr_image_copy_data(const wr_image* image, double* out, size_t count) {
  WR_REQUIRE(image && out, "null argument");
  const auto data = image->image.data();
  WR_REQUIRE(count >= data.size(), "output buffer too small");
  std::memcpy(out, data.data(), data.size() * sizeof(double));
  return WR_OK;
}

void wr_image_free(wr_image* image) { delete image; }

wr_status wr_mask_load_pgm(const char* path, wr_mask** out) {
  WR_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new wr_mask{wavereg::load_mask_pgm(path)}; });
}

size_t wr_mask_count(const wr_mask* mask) { return mask ? mask->mask.count() : 0; }

void wr_mask_free(wr_mask* mask) { delete mask; }

wr_status wr_overlay_write_ppm(const wr_image* fixed, const wr_image* registered, const wr_mask* mask,
                               double tolerance_fraction, const char* path) {
  WR_REQUIRE(fixed && registered && path, "null argument");
  return guarded([&] {
    wavereg::OverlayOptions options;
    if (tolerance_fraction > 0.0) options.tolerance_fraction = tolerance_fraction;
    const wavereg::Mask2D full(fixed->image.width(), fixed->image.height(), true);
    const auto rgb = wavereg::overlay_diff(fixed->image, registered->image, mask ? mask->mask : full, options);
    wavereg::save_ppm(rgb, path);
  });
}

wr_fixture_spec wr_fixture_spec_default(void) {
  wr_fixture_spec s{};
  s.pattern = "phantom";
  s.size = 128;
  s.truth = wr_params_identity();
  s.remap = "identity";
  s.noise_sigma = 0.0;
  s.seed = 0;
  return s;
}

wr_status wr_fixture_generate(const wr_fixture_spec* spec, wr_image** fixed, wr_image** moving) {
  WR_REQUIRE(spec && fixed && moving, "null argument");
  return guarded([&] {
    auto pair = wavereg::generate_pair(to_spec(*spec));
    *fixed = new wr_image{std::move(pair.fixed)};
    *moving = new wr_image{std::move(pair.moving)};
  });
}

wr_status wr_fixture_write(const wr_fixture_spec* spec, const char* dir) {
  WR_REQUIRE(spec && dir, "null argument");
  return guarded([&] {
    const auto s = to_spec(*spec);
    wavereg::write_fixture(s, wavereg::generate_pair(s), dir);
  });
}

wr_status wr_config_create(wr_config** out) {
  WR_REQUIRE(out, "null output handle");
  return guarded([&] { *out = new wr_config{}; });
}

void wr_config_free(wr_config* config) { delete config; }

wr_status wr_config_set_method(wr_config* config, const char* method) {
  WR_REQUIRE(config && method, "null argument");
  const auto m = wavereg::parse_method(method);
  if (!m) return fail(WR_ERR_PARAMETER, std::string("unknown method '") + method + "'");
  config->config.method = *m;
  return WR_OK;
}

wr_status wr_config_set_seed(wr_config* config, uint64_t seed) {
  WR_REQUIRE(config, "null config");
  config->config.optimizer.seed = seed;
  config->config.metric.sample_seed = seed;
  return WR_OK;
}

wr_status wr_config_set_pyramid_levels(wr_config* config, int levels) {
  WR_REQUIRE(config, "null config");
  WR_REQUIRE(levels >= 1, "pyramid levels must be at least 1");
  config->config.pyramid_levels = levels;
  return WR_OK;
}

wr_status wr_config_set_max_iterations(wr_config* config, int iterations) {
  WR_REQUIRE(config, "null config");
  WR_REQUIRE(iterations >= 0, "max iterations must be nonnegative");
  config->config.optimizer.max_iterations = iterations;
  return WR_OK;
}

wr_status wr_config_set_histogram_bins(wr_config* config, int bins) {
  WR_REQUIRE(config, "null config");
  WR_REQUIRE(bins >= 2, "histogram needs at least 2 bins");
  config->config.metric.histogram_bins = bins;
  return WR_OK;
}

wr_status wr_config_set_subband_objective(wr_config* config, const char* objective) {
  WR_REQUIRE(config && objective, "null argument");
  const std::string o(objective);
  if (o == "ll_only") {
    config->config.subband_objective = wavereg::SubbandObjective::LlOnly;
  } else if (o == "sum_all_bands") {
    config->config.subband_objective = wavereg::SubbandObjective::SumAllBands;
  } else {
    return fail(WR_ERR_PARAMETER, "unknown sub-band objective '" + o + "'");
  }
  return WR_OK;
}

wr_status wr_config_set_initial(wr_config* config, const wr_params* initial) {
  WR_REQUIRE(config && initial, "null argument");
  const auto p = to_params(*initial);
  WR_REQUIRE(p.valid(), "initial parameters out of domain");
  config->config.initial = p;
  return WR_OK;
}

wr_status wr_config_set_parameter_mask(wr_config* config, const int active[6]) {
  WR_REQUIRE(config && active, "null argument");
  for (int i = 0; i < 6; ++i) config->config.parameter_mask[i] = active[i] != 0;
  return WR_OK;
}

wr_status wr_register(const wr_image* fixed, const wr_image* moving, const wr_config* config, wr_result** out) {
  WR_REQUIRE(fixed && moving && config && out, "null argument");
  return guarded([&] { *out = new wr_result{wavereg::register_images(fixed->image, moving->image, config->config)}; });
}

wr_status wr_result_params(const wr_result* result, wr_params* out) {
  WR_REQUIRE(result && out, "null argument");
  *out = from_params(result->result.params);
  return WR_OK;
}

double wr_result_max_mi_bits(const wr_result* result) { return result ? result->result.max_mi_bits : 0.0; }
double wr_result_final_mi_bits(const wr_result* result) { return result ? result->result.final_mi_bits : 0.0; }
double wr_result_cc(const wr_result* result) { return result ? result->result.cc : 0.0; }

wr_status wr_result_registered(const wr_result* result, wr_image** out) {
  WR_REQUIRE(result && out, "null argument");
  return guarded([&] { *out = new wr_image{result->result.registered}; });
}

wr_status wr_result_write(const wr_result* result, const char* dir) {
  WR_REQUIRE(result && dir, "null argument");
  return guarded([&] { wavereg::write_result(result->result, dir); });
}

void wr_result_free(wr_result* result) { delete result; }

wr_status wr_compare_count_pairs(const char* source, size_t* count) {
  WR_REQUIRE(source && count, "null argument");
  return guarded([&] { *count = pairs_from(source).size(); });
}

wr_status wr_compare(const char* source, const wr_config* config, const char* out_dir, int write_pair_outputs) {
  WR_REQUIRE(source && config && out_dir, "null argument");
  return guarded([&] {
    const auto pairs = pairs_from(source);
    if (pairs.empty()) throw wavereg::Error(wavereg::ErrorKind::Parameter, std::string("empty manifest: ") + source);
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw wavereg::Error(wavereg::ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    const auto rows = wavereg::run_compare(pairs, config->config, write_pair_outputs ? dir : std::filesystem::path{});
    std::ofstream csv(dir / "report.csv");
    if (!csv) throw wavereg::Error(wavereg::ErrorKind::Io, "cannot open " + (dir / "report.csv").string());
    wavereg::write_report_csv(rows, csv);
    if (!csv) throw wavereg::Error(wavereg::ErrorKind::Io, "failed writing " + (dir / "report.csv").string());
  });
}

}  // extern "C"
