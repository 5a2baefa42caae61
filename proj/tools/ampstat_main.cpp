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

// ampstat: per-bin amplitude statistics of short-time spectra.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ampstat/bin_stats.hpp"
#include "ampstat/cli_report.hpp"
#include "ampstat/error.hpp"

namespace {

struct Flags {
  std::vector<std::string> inputs;
  std::string noise;
  std::size_t frame_len = 512;
  std::size_t hop = 256;
  std::string window = "hamming";
  int sample_rate_hz = 16000;
  std::string bins;
  std::size_t buckets = 64;
  std::uint64_t seed = 0;
  std::string label = "signal";
  std::string out = ".";
  std::size_t frames = 20000;
  bool dump_series = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--frame-len", f.frame_len, "Frame length (power of two)")
      ->capture_default_str();
  cmd->add_option("--hop", f.hop, "Frame hop in samples")->capture_default_str();
  cmd->add_option("--window", f.window, "hamming | rectangular")
      ->capture_default_str();
  cmd->add_option("--rate", f.sample_rate_hz,
                  "Sample rate for generated input")
      ->capture_default_str();
  cmd->add_option("--bins", f.bins, "Included bins lo..hi (default: interior)");
  cmd->add_option("--buckets", f.buckets, "Histogram buckets")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Run seed")->capture_default_str();
  cmd->add_option("--label", f.label, "Label for reports")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

ampstat::RunConfig to_config(ampstat::Command command, const Flags& f) {
  ampstat::RunConfig c;
  c.command = command;
  c.inputs = f.inputs;
  c.stft.frame_len = f.frame_len;
  c.stft.hop = f.hop;
  c.stft.window = ampstat::parse_window_kind(f.window);
  c.stft.sample_rate_hz = f.sample_rate_hz;
  if (!f.bins.empty()) c.bins = ampstat::BinRange::parse(f.bins);
  c.n_buckets = f.buckets;
  c.seed = f.seed;
  c.label = f.label;
  c.output_dir = f.out;
  c.frames = f.frames;
  c.dump_series = f.dump_series;
  if (!f.noise.empty()) c.noise = ampstat::parse_noise_spec(f.noise, f.seed);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short-time amplitude spectrum statistics"};
  app.require_subcommand(1);
  Flags flags;

  auto* analyze = app.add_subcommand(
      "analyze", "Per-bin mu/sigma/cv and the mu-sigma correlation report");
  auto* histogram = app.add_subcommand(
      "histogram", "Raw and mean-normalized per-bin histograms, prototype");
  auto* verify = app.add_subcommand("verify", "Run the property suite");
  auto* synth = app.add_subcommand("synth", "Synthesize a WAV from a model");
  auto* report = app.add_subcommand("report", "Merge cv_report.json files");
  auto* replay = app.add_subcommand("replay", "Re-run from a manifest.json");

  for (auto* cmd : {analyze, histogram, verify, synth, report}) {
    add_common(cmd, flags);
  }
  for (auto* cmd : {analyze, histogram, verify}) {
    cmd->add_option("--noise", flags.noise,
                    "Generated input as NoiseSpec JSON, e.g. "
                    "'{\"kind\":\"white_gaussian\",\"duration_s\":60}'");
  }
  analyze->add_option("input", flags.inputs, "16-bit PCM mono WAV");
  histogram->add_option("input", flags.inputs, "16-bit PCM mono WAV");
  analyze->add_flag("--dump-series", flags.dump_series,
                    "Also write the spectrum series (CSV and binary)");
  synth->add_option("model", flags.inputs, "Scaling model JSON")->required();
  synth->add_option("--frames", flags.frames, "Frames to synthesize")
      ->capture_default_str();
  report->add_option("reports", flags.inputs, "cv_report.json files")
      ->required();

  std::string manifest_path;
  std::string replay_out;
  replay->add_option("manifest", manifest_path, "manifest.json")->required();
  replay->add_option("--out", replay_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  ampstat::RunConfig config;
  try {
    if (replay->parsed()) {
      config = ampstat::load_manifest(manifest_path);
      config.output_dir = replay_out;
    } else {
      ampstat::Command command = ampstat::Command::analyze;
      for (auto* cmd : {analyze, histogram, verify, synth, report}) {
        if (cmd->parsed()) command = ampstat::parse_command(cmd->get_name());
      }
      config = to_config(command, flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const ampstat::RunResult result = ampstat::run(config, std::cout);
  if (result.exit_code == 2) std::cerr << "error: " << result.error << '\n';
  return result.exit_code;
}
