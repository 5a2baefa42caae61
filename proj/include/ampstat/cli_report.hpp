// Copyright 2026 The ampstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AMPSTAT_CLI_REPORT_HPP_
#define AMPSTAT_CLI_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ampstat/bin_stats.hpp"
#include "ampstat/signal_io.hpp"
#include "ampstat/spectral.hpp"

namespace ampstat {

enum class Command { analyze, histogram, verify, synth, report };

std::string to_string(Command command);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::analyze;
  // WAV path for analyze/histogram, model JSON for synth, cv_report.json
  // files for report. analyze/histogram take exactly one of inputs / noise.
  std::vector<std::string> inputs;
  std::optional<NoiseSpec> noise;
  StftConfig stft;
  std::optional<BinRange> bins;  // default: interior bins
  std::size_t n_buckets = 64;
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 0;
  std::string label = "signal";
  std::size_t frames = 20000;  // synth only
  bool dump_series = false;    // analyze: also write the spectrum series

  void validate() const;
};

// The manifest stores everything but output_dir, so a replay into another
// directory reproduces every file, the manifest included, byte for byte.
nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_manifest(const std::filesystem::path& path);

// Parses a --noise argument. When the JSON has no "seed" key the seed is
// derive_seed(run_seed, streams::kNoise), so the stored noise settings are explicit.
NoiseSpec parse_noise_spec(const std::string& json_text,
                           std::uint64_t run_seed);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 verify failures, 2 error
  std::vector<std::filesystem::path> files;
  std::string error;
};

// Executes one command. Files are written atomically (temp + rename); on
// failure every file written by this run is removed. Never throws.
RunResult run(const RunConfig& config, std::ostream& log);

// One summary row per cv_report.json.
struct SummaryRow {
  std::string label;
  double rho = 0.0;
  double c_s = 0.0;
  std::size_t n_frames = 0;
};

std::vector<SummaryRow> read_summary_rows(
    const std::vector<std::string>& report_paths);
std::string format_summary_table(const std::vector<SummaryRow>& rows);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace ampstat

#endif  // AMPSTAT_CLI_REPORT_HPP_
