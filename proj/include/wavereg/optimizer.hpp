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
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "wavereg/transform.hpp"

namespace wavereg {

/// (1+1) evolution strategy settings. Defaults follow the classic
/// multimodal configuration: growth 1.01, epsilon 1.5e-6, radius 0.001,
/// 500 iterations.
struct OptimizerConfig {
  double growth_factor = 1.01;
  double epsilon = 1.5e-6;
  double initial_radius = 0.001;
  int max_iterations = 500;
  double shrink_exponent = 0.25;
  /// Per-parameter step scale in (tx, ty, theta, sx, sy, k) order.
  std::array<double, 6> param_scales{100.0, 100.0, 5.0, 0.5, 0.5, 0.5};
  /// Parameters with a false flag are never mutated.
  std::array<bool, 6> active{true, true, true, true, true, true};
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Termination { RadiusBelowEpsilon, MaxIterations };

const char* to_string(Termination t) noexcept;

struct TraceRecord {
  int iteration = 0;
  AffineParams candidate;
  double value = 0.0;  // NaN when the candidate was rejected without evaluation
  bool accepted = false;
  double radius = 0.0;  // radius used to draw this candidate
};

struct OptimizerTrace {
  std::vector<TraceRecord> records;
  double initial_value = 0.0;
  double best_value = 0.0;
  AffineParams best_params;
  Termination termination = Termination::MaxIterations;
  double final_radius = 0.0;
};

/// Objective to maximize. Non-finite return values count as failures.
using Objective = std::function<double(const AffineParams&)>;

struct OptimizeResult {
  AffineParams params;  // best ever seen
  OptimizerTrace trace;
};

/// Each iteration draws n ~ N(0, I_6), proposes parent + radius * (scales .* n),
/// and keeps it only on strict improvement. Success grows the radius by
/// growth_factor, failure shrinks it by growth_factor^-shrink_exponent. Stops
/// once the radius drops below epsilon or after max_iterations.
OptimizeResult optimize(const Objective& objective, const AffineParams& start,
                        const OptimizerConfig& config);

/// iteration,mi_bits,accepted,radius,tx,ty,theta,sx,sy,k
void write_trace_csv(const OptimizerTrace& trace, std::ostream& out);

}  // namespace wavereg
