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

#include "wavereg/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "wavereg/error.hpp"

namespace wavereg {

void MetricConfig::validate() const {
  if (histogram_bins < 2) throw Error(ErrorKind::Parameter, "histogram needs at least 2 bins");
  if (!use_all_pixels && num_spatial_samples < histogram_bins) {
    throw Error(ErrorKind::Parameter, "spatial samples must be at least the number of bins");
  }
}

int bin_index(double value, double lo, double hi, int bins) noexcept {
  if (!(hi > lo)) return 0;
  const int b = static_cast<int>((value - lo) / (hi - lo) * bins);
  return std::clamp(b, 0, bins - 1);
}

JointHistogram JointHistogram::transposed() const {
  JointHistogram t = *this;
  std::swap(t.fixed_range, t.moving_range);
  for (int r = 0; r < bins; ++r)
    for (int c = 0; c < bins; ++c) t.counts[static_cast<std::size_t>(c) * bins + r] = at(r, c);
  return t;
}

std::vector<double> JointHistogram::fixed_marginal() const {
  std::vector<double> p(bins, 0.0);
  for (int r = 0; r < bins; ++r)
    for (int c = 0; c < bins; ++c) p[c] += at(r, c);
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> JointHistogram::moving_marginal() const {
  std::vector<double> p(bins, 0.0);
  for (int r = 0; r < bins; ++r)
    for (int c = 0; c < bins; ++c) p[r] += at(r, c);
  for (double& v : p) v /= total;
  return p;
}

JointHistogram joint_histogram(const Image2D& fixed, const Image2D& moving, const Mask2D& mask,
                               const MetricConfig& config) {
  config.validate();
  if (!fixed.same_shape(moving) || !mask.same_shape(fixed)) {
    throw Error(ErrorKind::Dimension, "joint histogram inputs differ in size");
  }

  std::vector<std::size_t> pixels;
  pixels.reserve(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask.at(i)) pixels.push_back(i);
  if (pixels.empty()) throw Error(ErrorKind::Numeric, "no overlap");

  if (!config.use_all_pixels && pixels.size() > static_cast<std::size_t>(config.num_spatial_samples)) {
    std::vector<std::size_t> chosen;
    chosen.reserve(config.num_spatial_samples);
    std::mt19937_64 rng(config.sample_seed);
    std::sample(pixels.begin(), pixels.end(), std::back_inserter(chosen), config.num_spatial_samples, rng);
    pixels = std::move(chosen);
  }

  const auto f = fixed.data();
  const auto m = moving.data();
  double flo = f[pixels[0]], fhi = flo, mlo = m[pixels[0]], mhi = mlo;
  for (std::size_t i : pixels) {
    flo = std::min(flo, f[i]);
    fhi = std::max(fhi, f[i]);
    mlo = std::min(mlo, m[i]);
    mhi = std::max(mhi, m[i]);
  }

  JointHistogram hist;
  hist.bins = config.histogram_bins;
  hist.counts.assign(static_cast<std::size_t>(hist.bins) * hist.bins, 0.0);
  hist.fixed_range = {flo, fhi};
  hist.moving_range = {mlo, mhi};
  hist.degenerate = !(fhi > flo) || !(mhi > mlo);

  const double fscale = fhi > flo ? hist.bins / (fhi - flo) : 0.0;
  const double mscale = mhi > mlo ? hist.bins / (mhi - mlo) : 0.0;
  const int top = hist.bins - 1;
  for (std::size_t i : pixels) {
    const int fb = std::min(static_cast<int>((f[i] - flo) * fscale), top);
    const int mb = std::min(static_cast<int>((m[i] - mlo) * mscale), top);
    hist.counts[static_cast<std::size_t>(mb) * hist.bins + fb] += 1.0;
  }
  hist.total = static_cast<double>(pixels.size());
  return hist;
}

double mutual_information(const JointHistogram& hist) {
  if (hist.degenerate || hist.bins < 2 || !(hist.total > 0.0)) return 0.0;
  const auto pf = hist.fixed_marginal();
  const auto pm = hist.moving_marginal();

  // Terms are summed in sorted order so the result does not depend on the
  // histogram's orientation.
  std::vector<double> terms;
  terms.reserve(hist.counts.size());
  for (int r = 0; r < hist.bins; ++r) {
    for (int c = 0; c < hist.bins; ++c) {
      const double n = hist.at(r, c);
      if (n <= 0.0) continue;
      const double p = n / hist.total;
      terms.push_back(p * std::log2(p / (pf[c] * pm[r])));
    }
  }
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

double correlation_coefficient(const Image2D& a, const Image2D& b, const Mask2D& mask) {
  if (!a.same_shape(b) || !mask.same_shape(a)) throw Error(ErrorKind::Dimension, "correlation inputs differ in size");
  const auto x = a.data();
  const auto y = b.data();
  std::size_t n = 0;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.at(i)) continue;
    ++n;
    sx += x[i];
    sy += y[i];
  }
  if (n < 2) throw Error(ErrorKind::Numeric, "undefined correlation: fewer than 2 overlapping pixels");
  const double xm = sx / n, ym = sy / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.at(i)) continue;
    const double dx = x[i] - xm, dy = y[i] - ym;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorKind::Numeric, "undefined correlation: zero variance");
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

std::string metrics_to_json(const Metrics& metrics) {
  nlohmann::ordered_json j;
  j["mi_bits"] = metrics.mi_bits;
  j["cc"] = metrics.cc;
  j["overlap_pixels"] = metrics.overlap_pixels;
  return j.dump(2);
}

}  // namespace wavereg
