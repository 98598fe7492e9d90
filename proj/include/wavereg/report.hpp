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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavereg/pipeline.hpp"

namespace wavereg {

/// Writes registered.pgm, mask.pgm, params.json, metrics.json and one
/// trace_level<L>.csv per optimized level.
void write_result(const RegistrationResult& result, const std::filesystem::path& dir);

std::string result_metrics_json(const RegistrationResult& result);

struct ManifestEntry {
  std::string id;
  std::filesystem::path fixed;
  std::filesystem::path moving;
};

/// `id,fixed_path,moving_path` with a header line. Relative paths resolve
/// against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// One entry per subdirectory holding fixed.pgm and moving.pgm, id = name.
std::vector<ManifestEntry> scan_fixture_dir(const std::filesystem::path& dir);

inline constexpr std::array<Method, 3> kAllMethods{Method::Pyramid, Method::Wavelet, Method::DwtPyramid};

struct MethodScores {
  double max_mi_bits = 0.0;
  double final_mi_bits = 0.0;
  double cc = 0.0;
  bool mi_winner = false;  // argmax of final_mi_bits, ties shared
  bool cc_winner = false;
};

struct CompareReportRow {
  std::string id;
  std::array<MethodScores, 3> scores;  // indexed like kAllMethods
};

/// Sets the winner flags of `row` from its value columns.
void mark_winners(CompareReportRow& row);

/// Registers every pair with all three methods under the same config (method
/// overridden per run). When `per_pair_dir` is non-empty each run's outputs go
/// to <per_pair_dir>/<id>/<method>/. Rows come back sorted by id.
std::vector<CompareReportRow> run_compare(const std::vector<ManifestEntry>& pairs,
                                          const RegistrationConfig& config,
                                          const std::filesystem::path& per_pair_dir = {});

/// Columns id,method,max_mi_bits,final_mi_bits,cc,mi_winner,cc_winner; three
/// lines per pair, then three `summary` lines carrying per-method win counts.
void write_report_csv(const std::vector<CompareReportRow>& rows, std::ostream& out);

/// Parses the per-pair lines of a report written by write_report_csv.
std::vector<CompareReportRow> read_report_csv(std::istream& in);

}  // namespace wavereg
