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

// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "wavereg/wavereg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ImageDeleter {
  void operator()(wr_image* p) const { wr_image_free(p); }
};
struct MaskDeleter {
  void operator()(wr_mask* p) const { wr_mask_free(p); }
};
struct ConfigDeleter {
  void operator()(wr_config* p) const { wr_config_free(p); }
};
struct ResultDeleter {
  void operator()(wr_result* p) const { wr_result_free(p); }
};
using ImagePtr = std::unique_ptr<wr_image, ImageDeleter>;
using MaskPtr = std::unique_ptr<wr_mask, MaskDeleter>;
using ConfigPtr = std::unique_ptr<wr_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<wr_result, ResultDeleter>;

int report(wr_status status) {
  std::cerr << "error: " << wr_last_error() << '\n';
  return status == WR_ERR_PARAMETER ? kExitUsage : kExitRuntime;
}

// Runtime errors never map to the usage exit code once inputs are accepted.
int runtime_failure() {
  std::cerr << "error: " << wr_last_error() << '\n';
  return kExitRuntime;
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

struct SynthArgs {
  std::string pattern = "phantom";
  int size = 0;
  double tx = 0, ty = 0, theta_deg = 0, sx = 1, sy = 1, k = 0;
  std::string remap = "identity";
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct CommonRegArgs {
  std::uint64_t seed = 0;
  int levels = 3;
  int iterations = 500;
  int bins = 50;
  std::string subband_objective = "sum_all_bands";
  double init_tx = 0, init_ty = 0, init_theta_deg = 0;
};

struct RegisterArgs {
  std::string method;
  std::string fixed, moving, out;
  CommonRegArgs common;
};

struct CompareArgs {
  std::string source, out;
  bool no_pair_outputs = false;
  CommonRegArgs common;
};

struct DiffArgs {
  std::string fixed, registered, mask, out;
  double tolerance = 0.1;
};

void add_common(CLI::App* cmd, CommonRegArgs& a) {
  cmd->add_option("--seed", a.seed, "Master seed")->capture_default_str();
  cmd->add_option("--levels", a.levels, "Gaussian pyramid levels")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--iterations", a.iterations, "Optimizer iterations per level")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--bins", a.bins, "Histogram bins")->check(CLI::Range(2, 4096))->capture_default_str();
  cmd->add_option("--subband-objective", a.subband_objective, "sum_all_bands or ll_only")
      ->check(CLI::IsMember({"sum_all_bands", "ll_only"}))
      ->capture_default_str();
  cmd->add_option("--init-tx", a.init_tx, "Initial tx (pixels)");
  cmd->add_option("--init-ty", a.init_ty, "Initial ty (pixels)");
  cmd->add_option("--init-theta-deg", a.init_theta_deg, "Initial rotation (degrees)");
}

// Returns WR_OK or the first failing status.
wr_status build_config(const CommonRegArgs& a, const std::string& method, ConfigPtr& out) {
  wr_config* raw = nullptr;
  if (wr_status s = wr_config_create(&raw); s != WR_OK) return s;
  out.reset(raw);
  wr_params init = wr_params_identity();
  init.tx = a.init_tx;
  init.ty = a.init_ty;
  init.theta = deg_to_rad(a.init_theta_deg);
  for (wr_status s : {wr_config_set_method(raw, method.c_str()), wr_config_set_seed(raw, a.seed),
                      wr_config_set_pyramid_levels(raw, a.levels), wr_config_set_max_iterations(raw, a.iterations),
                      wr_config_set_histogram_bins(raw, a.bins),
                      wr_config_set_subband_objective(raw, a.subband_objective.c_str()),
                      wr_config_set_initial(raw, &init)}) {
    if (s != WR_OK) return s;
  }
  return WR_OK;
}

int cmd_synth(const SynthArgs& a) {
  wr_fixture_spec spec = wr_fixture_spec_default();
  spec.pattern = a.pattern.c_str();
  spec.size = a.size;
  spec.truth = {a.tx, a.ty, deg_to_rad(a.theta_deg), a.sx, a.sy, a.k};
  spec.remap = a.remap.c_str();
  spec.noise_sigma = a.noise;
  spec.seed = a.seed;
  if (wr_status s = wr_fixture_write(&spec, a.out.c_str()); s != WR_OK) return report(s);
  std::cout << "wrote fixture to " << a.out << '\n';
  return kExitOk;
}

int cmd_register(const RegisterArgs& a) {
  ConfigPtr config;
  if (wr_status s = build_config(a.common, a.method, config); s != WR_OK) return report(s);

  wr_image* raw = nullptr;
  if (wr_image_load_pgm(a.fixed.c_str(), &raw) != WR_OK) return runtime_failure();
  ImagePtr fixed(raw);
  if (wr_image_load_pgm(a.moving.c_str(), &raw) != WR_OK) return runtime_failure();
  ImagePtr moving(raw);

  wr_result* res = nullptr;
  if (wr_register(fixed.get(), moving.get(), config.get(), &res) != WR_OK) return runtime_failure();
  ResultPtr result(res);
  if (wr_result_write(result.get(), a.out.c_str()) != WR_OK) return runtime_failure();

  wr_params p{};
  wr_result_params(result.get(), &p);
  std::cout << "method " << a.method << ": tx=" << p.tx << " ty=" << p.ty << " theta_deg=" << p.theta * 180.0 / std::numbers::pi
            << " sx=" << p.sx << " sy=" << p.sy << " k=" << p.k << '\n'
            << "max_mi_bits=" << wr_result_max_mi_bits(result.get())
            << " final_mi_bits=" << wr_result_final_mi_bits(result.get()) << " cc=" << wr_result_cc(result.get())
            << '\n';
  return kExitOk;
}

int cmd_compare(const CompareArgs& a) {
  std::size_t count = 0;
  if (wr_compare_count_pairs(a.source.c_str(), &count) != WR_OK) return runtime_failure();
  if (count == 0) {
    std::cerr << "error: no pairs found in " << a.source << '\n';
    return kExitUsage;
  }
  ConfigPtr config;
  if (wr_status s = build_config(a.common, "dwt-pyramid", config); s != WR_OK) return report(s);
  if (wr_compare(a.source.c_str(), config.get(), a.out.c_str(), a.no_pair_outputs ? 0 : 1) != WR_OK) {
    return runtime_failure();
  }
  std::cout << "compared " << count << " pair(s); report at " << a.out << "/report.csv\n";
  return kExitOk;
}

int cmd_diff(const DiffArgs& a) {
  wr_image* raw = nullptr;
  if (wr_image_load_pgm(a.fixed.c_str(), &raw) != WR_OK) return runtime_failure();
  ImagePtr fixed(raw);
  if (wr_image_load_pgm(a.registered.c_str(), &raw) != WR_OK) return runtime_failure();
  ImagePtr registered(raw);
  MaskPtr mask;
  if (!a.mask.empty()) {
    wr_mask* m = nullptr;
    if (wr_mask_load_pgm(a.mask.c_str(), &m) != WR_OK) return runtime_failure();
    mask.reset(m);
  }
  if (wr_overlay_write_ppm(fixed.get(), registered.get(), mask.get(), a.tolerance, a.out.c_str()) != WR_OK) {
    return runtime_failure();
  }
  std::cout << "wrote " << a.out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavereg: multimodal 2-D registration with Haar wavelets and Gaussian pyramids"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic fixed/moving pair with known truth");
  s->add_option("--pattern", synth.pattern, "phantom, checker or noise")
      ->check(CLI::IsMember({"phantom", "phantom_ellipses", "checker", "noise", "noise_smoothed"}))
      ->capture_default_str();
  s->add_option("--size", synth.size, "Image side in pixels (>= 64)")->required();
  s->add_option("--tx", synth.tx, "Truth tx (pixels)");
  s->add_option("--ty", synth.ty, "Truth ty (pixels)");
  s->add_option("--theta-deg", synth.theta_deg, "Truth rotation (degrees)");
  s->add_option("--sx", synth.sx, "Truth x scale");
  s->add_option("--sy", synth.sy, "Truth y scale");
  s->add_option("--k", synth.k, "Truth shear");
  s->add_option("--remap", synth.remap, "identity, invert, gamma:<g> or negate-log")->capture_default_str();
  s->add_option("--noise", synth.noise, "Noise sigma as a fraction of intensity range")->capture_default_str();
  s->add_option("--seed", synth.seed, "Seed")->capture_default_str();
  s->add_option("-o,--out", synth.out, "Output directory")->required();

  RegisterArgs reg;
  auto* r = app.add_subcommand("register", "Register moving onto fixed");
  r->add_option("--method", reg.method, "pyramid, wavelet or dwt-pyramid")
      ->required()
      ->check(CLI::IsMember({"pyramid", "wavelet", "dwt-pyramid"}));
  r->add_option("fixed", reg.fixed, "Fixed image (PGM)")->required();
  r->add_option("moving", reg.moving, "Moving image (PGM)")->required();
  r->add_option("-o,--out", reg.out, "Output directory")->required();
  add_common(r, reg.common);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Run all three methods on every pair and write report.csv");
  c->add_option("source", cmp.source, "Manifest CSV (id,fixed_path,moving_path) or fixture directory")->required();
  c->add_option("-o,--out", cmp.out, "Output directory")->required();
  c->add_flag("--no-pair-outputs", cmp.no_pair_outputs, "Only write report.csv");
  add_common(c, cmp.common);

  DiffArgs diff;
  auto* d = app.add_subcommand("diff", "Render the grey/fuchsia difference overlay");
  d->add_option("fixed", diff.fixed, "Fixed image (PGM)")->required();
  d->add_option("registered", diff.registered, "Registered image (PGM)")->required();
  d->add_option("mask", diff.mask, "Validity mask (PGM); all pixels when omitted");
  d->add_option("-o,--out", diff.out, "Output PPM")->required();
  d->add_option("--tolerance", diff.tolerance, "Agreement tolerance, fraction of the fixed range")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << '\n' << app.help() << '\n';
    return kExitUsage;
  }

  if (s->parsed()) return cmd_synth(synth);
  if (r->parsed()) return cmd_register(reg);
  if (c->parsed()) return cmd_compare(cmp);
  if (d->parsed()) return cmd_diff(diff);
  return kExitUsage;
}
