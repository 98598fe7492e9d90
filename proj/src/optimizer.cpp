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

#include "wavereg/optimizer.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include "wavereg/error.hpp"

namespace wavereg {

void OptimizerConfig::validate() const {
  if (!(growth_factor > 1.0)) throw Error(ErrorKind::Parameter, "growth factor must exceed 1");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Parameter, "epsilon must be positive");
  if (!(initial_radius > epsilon)) throw Error(ErrorKind::Parameter, "initial radius must exceed epsilon");
  if (max_iterations < 0) throw Error(ErrorKind::Parameter, "max iterations must be nonnegative");
  if (!(shrink_exponent > 0.0)) throw Error(ErrorKind::Parameter, "shrink exponent must be positive");
  for (double s : param_scales)
    if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::Parameter, "parameter scales must be positive");
}

const char* to_string(Termination t) noexcept {
  return t == Termination::RadiusBelowEpsilon ? "radius_below_epsilon" : "max_iterations";
}

OptimizeResult optimize(const Objective& objective, const AffineParams& start, const OptimizerConfig& config) {
  config.validate();
  if (!start.valid()) throw Error(ErrorKind::Parameter, "invalid start: parameters out of domain");
  const double start_value = objective(start);
  if (!std::isfinite(start_value)) throw Error(ErrorKind::Numeric, "invalid start: objective is not finite");

  OptimizeResult result;
  OptimizerTrace& trace = result.trace;
  trace.initial_value = start_value;
  trace.best_value = start_value;
  trace.best_params = start;
  trace.records.reserve(static_cast<std::size_t>(config.max_iterations));

  const double shrink = std::pow(config.growth_factor, -config.shrink_exponent);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  AffineParams parent = start;
  double parent_value = start_value;
  double radius = config.initial_radius;

  for (int iter = 0; iter < config.max_iterations && radius >= config.epsilon; ++iter) {
    TraceRecord rec;
    rec.iteration = iter;
    rec.radius = radius;
    rec.candidate = parent;
    for (int i = 0; i < AffineParams::kCount; ++i) {
      const double n = normal(rng);
      if (config.active[i]) rec.candidate[i] += radius * config.param_scales[i] * n;
    }

    rec.value = std::numeric_limits<double>::quiet_NaN();
    if (rec.candidate.valid()) rec.value = objective(rec.candidate);
    rec.accepted = std::isfinite(rec.value) && rec.value > parent_value;

    if (rec.accepted) {
      parent = rec.candidate;
      parent_value = rec.value;
      radius *= config.growth_factor;
      if (parent_value > trace.best_value) {
        trace.best_value = parent_value;
        trace.best_params = parent;
      }
    } else {
      radius *= shrink;
    }
    trace.records.push_back(rec);
  }

  trace.final_radius = radius;
  trace.termination = radius < config.epsilon ? Termination::RadiusBelowEpsilon : Termination::MaxIterations;
  result.params = trace.best_params;
  return result;
}

void write_trace_csv(const OptimizerTrace& trace, std::ostream& out) {
  out << "iteration,mi_bits,accepted,radius,tx,ty,theta,sx,sy,k\n";
  out << std::setprecision(17);
  for (const auto& r : trace.records) {
    out << r.iteration << ',';
    if (std::isfinite(r.value))
      out << r.value;
    else
      out << "nan";
    out << ',' << (r.accepted ? 1 : 0) << ',' << r.radius;
    for (int i = 0; i < AffineParams::kCount; ++i) out << ',' << r.candidate[i];
    out << '\n';
  }
}

}  // namespace wavereg
