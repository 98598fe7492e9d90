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

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wavereg/image.hpp"

namespace wavereg {

struct MetricConfig {
  int histogram_bins = 50;
  bool use_all_pixels = true;
  int num_spatial_samples = 500;  // only read when use_all_pixels is false
  std::uint64_t sample_seed = 0;

  void validate() const;
};

/// Hard-binned joint intensity histogram over the masked pixels.
///
/// counts are stored row-major with the moving-image bin as the row index and
/// the fixed-image bin as the column index.
struct JointHistogram {
  int bins = 0;
  std::vector<double> counts;
  std::pair<double, double> fixed_range{0.0, 0.0};
  std::pair<double, double> moving_range{0.0, 0.0};
  double total = 0.0;
  bool degenerate = false;  // one of the images was constant over the mask

  double at(int moving_bin, int fixed_bin) const { return counts[static_cast<std::size_t>(moving_bin) * bins + fixed_bin]; }

  JointHistogram transposed() const;
  std::vector<double> fixed_marginal() const;   // normalized
  std::vector<double> moving_marginal() const;  // normalized
};

/// Bin index for linear binning of `value` over [lo, hi], top edge inclusive.
int bin_index(double value, double lo, double hi, int bins) noexcept;

JointHistogram joint_histogram(const Image2D& fixed, const Image2D& moving, const Mask2D& mask,
                               const MetricConfig& config = {});

/// Mutual information in bits. Zero for a degenerate histogram.
double mutual_information(const JointHistogram& hist);

/// Shannon entropy in bits of a normalized distribution.
double entropy_bits(const std::vector<double>& p);

/// Pearson correlation over the masked pixels.
double correlation_coefficient(const Image2D& a, const Image2D& b, const Mask2D& mask);

struct Metrics {
  double mi_bits = 0.0;
  double cc = 0.0;
  std::size_t overlap_pixels = 0;
};

/// {"mi_bits":..., "cc":..., "overlap_pixels":...}
std::string metrics_to_json(const Metrics& metrics);

}  // namespace wavereg
