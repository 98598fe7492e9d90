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

#include "wavereg/report.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wavereg/error.hpp"
#include "wavereg/netpbm.hpp"

namespace wavereg {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

int method_index(Method m) {
  return static_cast<int>(std::find(kAllMethods.begin(), kAllMethods.end(), m) - kAllMethods.begin());
}

}  // namespace

std::string result_metrics_json(const RegistrationResult& result) {
  nlohmann::ordered_json j;
  j["mi_bits"] = result.final_mi_bits;
  j["cc"] = result.cc;
  j["overlap_pixels"] = result.overlap_pixels;
  j["max_mi_bits"] = result.max_mi_bits;
  j["method"] = to_string(result.method);
  return j.dump(2);
}

void write_result(const RegistrationResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());

  const int maxval = result.registered.range().second > 255.5 ? 65535 : 255;
  save_pgm(result.registered, dir / "registered.pgm", maxval);
  save_mask_pgm(result.mask, dir / "mask.pgm");
  write_text(dir / "params.json",
             params_to_json(result.params, CenterPixel::of(result.registered.width(), result.registered.height())) + "\n");
  write_text(dir / "metrics.json", result_metrics_json(result) + "\n");
  for (const LevelTrace& lt : result.traces) {
    std::ostringstream csv;
    write_trace_csv(lt.trace, csv);
    write_text(dir / ("trace_level" + std::to_string(lt.level) + ".csv"), csv.str());
  }
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open manifest " + path.string());
  const std::filesystem::path base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("id", 0) == 0) continue;
      throw Error(ErrorKind::Format, path.string() + ": manifest must start with header id,fixed_path,moving_path");
    }
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(line_no) + ": expected 3 fields");
    }
    ManifestEntry e{trim(fields[0]), trim(fields[1]), trim(fields[2])};
    if (e.fixed.is_relative()) e.fixed = base / e.fixed;
    if (e.moving.is_relative()) e.moving = base / e.moving;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ManifestEntry> scan_fixture_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Io, dir.string() + " is not a directory");
  std::vector<ManifestEntry> entries;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (!item.is_directory()) continue;
    const auto fixed = item.path() / "fixed.pgm", moving = item.path() / "moving.pgm";
    if (std::filesystem::exists(fixed) && std::filesystem::exists(moving)) {
      entries.push_back({item.path().filename().string(), fixed, moving});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return entries;
}

void mark_winners(CompareReportRow& row) {
  double best_mi = -std::numeric_limits<double>::infinity(), best_cc = best_mi;
  for (const auto& s : row.scores) {
    if (std::isfinite(s.final_mi_bits)) best_mi = std::max(best_mi, s.final_mi_bits);
    if (std::isfinite(s.cc)) best_cc = std::max(best_cc, s.cc);
  }
  for (auto& s : row.scores) {
    s.mi_winner = s.final_mi_bits == best_mi;
    s.cc_winner = s.cc == best_cc;
  }
}

std::vector<CompareReportRow> run_compare(const std::vector<ManifestEntry>& pairs, const RegistrationConfig& config,
                                          const std::filesystem::path& per_pair_dir) {
  std::vector<CompareReportRow> rows;
  for (const ManifestEntry& pair : pairs) {
    const Image2D fixed = load_pgm(pair.fixed);
    const Image2D moving = load_pgm(pair.moving);
    CompareReportRow row;
    row.id = pair.id;
    for (Method m : kAllMethods) {
      RegistrationConfig c = config;
      c.method = m;
      const RegistrationResult r = register_images(fixed, moving, c);
      row.scores[method_index(m)] = {r.max_mi_bits, r.final_mi_bits, r.cc, false, false};
      if (!per_pair_dir.empty()) write_result(r, per_pair_dir / pair.id / to_string(m));
    }
    mark_winners(row);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return rows;
}

void write_report_csv(const std::vector<CompareReportRow>& rows, std::ostream& out) {
  out << "id,method,max_mi_bits,final_mi_bits,cc,mi_winner,cc_winner\n";
  out << std::setprecision(17);
  std::array<int, 3> mi_wins{}, cc_wins{};
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < kAllMethods.size(); ++i) {
      const MethodScores& s = row.scores[i];
      out << row.id << ',' << to_string(kAllMethods[i]) << ',' << s.max_mi_bits << ',' << s.final_mi_bits << ','
          << s.cc << ',' << (s.mi_winner ? 1 : 0) << ',' << (s.cc_winner ? 1 : 0) << '\n';
      mi_wins[i] += s.mi_winner;
      cc_wins[i] += s.cc_winner;
    }
  }
  for (std::size_t i = 0; i < kAllMethods.size(); ++i) {
    out << "summary," << to_string(kAllMethods[i]) << ",,,," << mi_wins[i] << ',' << cc_wins[i] << '\n';
  }
}

std::vector<CompareReportRow> read_report_csv(std::istream& in) {
  std::vector<CompareReportRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw Error(ErrorKind::Format, "report line needs 7 fields: " + line);
    if (f[0] == "summary") continue;
    const auto method = parse_method(f[1]);
    if (!method) throw Error(ErrorKind::Format, "unknown method in report: " + f[1]);
    if (rows.empty() || rows.back().id != f[0]) rows.push_back({f[0], {}});
    MethodScores& s = rows.back().scores[method_index(*method)];
    s.max_mi_bits = std::stod(f[2]);
    s.final_mi_bits = std::stod(f[3]);
    s.cc = std::stod(f[4]);
    s.mi_winner = f[5] == "1";
    s.cc_winner = f[6] == "1";
  }
  return rows;
}

}  // namespace wavereg
