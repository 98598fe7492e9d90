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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavereg/image.hpp"
#include "wavereg/metric.hpp"
#include "wavereg/optimizer.hpp"
#include "wavereg/transform.hpp"
#include "wavereg/wavelet.hpp"

namespace wavereg {

enum class Method { Pyramid, Wavelet, DwtPyramid };

const char* to_string(Method m) noexcept;
/// Accepts "pyramid", "wavelet", "dwt-pyramid" (or "dwt_pyramid").
std::optional<Method> parse_method(std::string_view name) noexcept;

enum class SubbandObjective { LlOnly, SumAllBands };

/// Smallest fixed/moving image side accepted by the registration methods.
inline constexpr int kMinRegistrationSize = 32;

struct RegistrationConfig {
  Method method = Method::DwtPyramid;
  int pyramid_levels = 3;
  MetricConfig metric;
  /// optimizer.seed is the master seed; level l runs with seed + l.
  OptimizerConfig optimizer;
  std::array<bool, 6> parameter_mask{true, true, true, true, true, true};
  SubbandObjective subband_objective = SubbandObjective::SumAllBands;
  /// Starting guess in full-resolution coordinates.
  AffineParams initial = AffineParams::identity();

  void validate() const;
};

struct LevelTrace {
  int level = 0;      // 0 is the finest level of the domain being optimized
  double scale = 1;   // full-resolution pixels per level pixel
  AffineParams start; // level-space parameters the optimizer started from
  OptimizerTrace trace;
};

struct RegistrationResult {
  Method method = Method::DwtPyramid;
  AffineParams params;  // full-resolution coordinates
  Image2D registered;
  Mask2D mask;
  double max_mi_bits = 0.0;    // best objective value over all levels
  double final_mi_bits = 0.0;  // spatial-domain MI(fixed, registered)
  double cc = 0.0;
  std::size_t overlap_pixels = 0;
  std::vector<LevelTrace> traces;  // in execution order, coarsest first
};

RegistrationResult register_pyramid(const Image2D& fixed, const Image2D& moving,
                                    const RegistrationConfig& config);
RegistrationResult register_wavelet(const Image2D& fixed, const Image2D& moving,
                                    const RegistrationConfig& config);
RegistrationResult register_dwt_pyramid(const Image2D& fixed, const Image2D& moving,
                                        const RegistrationConfig& config);

/// Dispatches on config.method.
RegistrationResult register_images(const Image2D& fixed, const Image2D& moving,
                                   const RegistrationConfig& config);

/// Recomputes spatial MI and CC between `fixed` and result.registered over
/// result.mask.
Metrics evaluate(const Image2D& fixed, const RegistrationResult& result,
                 const MetricConfig& metric = {});

/// Warps the four moving sub-bands with one transform expressed in sub-band
/// coordinates and reconstructs the spatial image. The mask is the sub-band
/// mask replicated over each 2x2 block and cropped.
WarpResult warp_via_subbands(const SubBands& moving, const AffineParams& band_params);

}  // namespace wavereg
