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

#include "ampstat/cli_report.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ampstat/bin_stats.hpp"
#include "ampstat/error.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/random.hpp"
#include "ampstat/serialization.hpp"
#include "ampstat/synthesis.hpp"
#include "ampstat/verify.hpp"

#ifndef AMPSTAT_VERSION
#define AMPSTAT_VERSION "0.0.0"
#endif

namespace ampstat {

namespace fs = std::filesystem;

std::string to_string(Command command) {
  switch (command) {
    case Command::analyze: return "analyze";
    case Command::histogram: return "histogram";
    case Command::verify: return "verify";
    case Command::synth: return "synth";
    case Command::report: return "report";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::analyze, Command::histogram, Command::verify,
                 Command::synth, Command::report}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown command '" + name + "'");
}

void RunConfig::validate() const {
  stft.validate();
  if (n_buckets < 8) throw InvalidArgument("--buckets must be >= 8");
  switch (command) {
    case Command::analyze:
    case Command::histogram:
      if (inputs.size() + (noise ? 1 : 0) != 1) {
        throw InvalidArgument(to_string(command) +
                              " needs exactly one input: a WAV path or --noise");
      }
      break;
    case Command::verify:
      if (!inputs.empty()) {
        throw InvalidArgument("verify takes no input files (use --noise)");
      }
      break;
    case Command::synth:
      if (inputs.size() != 1 || noise) {
        throw InvalidArgument("synth needs exactly one scaling-model JSON");
      }
      if (frames == 0) throw InvalidArgument("--frames must be >= 1");
      break;
    case Command::report:
      if (inputs.empty() || noise) {
        throw InvalidArgument("report needs one or more cv_report.json files");
      }
      break;
  }
}

nlohmann::json config_to_json(const RunConfig& c) {
  json j{{"command", to_string(c.command)},
         {"inputs", c.inputs},
         {"noise", c.noise ? json(*c.noise) : json(nullptr)},
         {"stft", c.stft},
         {"bins", c.bins ? json(*c.bins) : json(nullptr)},
         {"n_buckets", c.n_buckets},
         {"seed", c.seed},
         {"label", c.label},
         {"frames", c.frames},
         {"dump_series", c.dump_series}};
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  c.inputs = j.value("inputs", std::vector<std::string>{});
  if (j.contains("noise") && !j["noise"].is_null()) {
    c.noise = j["noise"].get<NoiseSpec>();
  }
  if (j.contains("stft")) c.stft = j["stft"].get<StftConfig>();
  if (j.contains("bins") && !j["bins"].is_null()) {
    c.bins = j["bins"].get<BinRange>();
  }
  c.n_buckets = j.value("n_buckets", c.n_buckets);
  c.seed = j.value("seed", c.seed);
  c.label = j.value("label", c.label);
  c.frames = j.value("frames", c.frames);
  c.dump_series = j.value("dump_series", c.dump_series);
  return c;
}

RunConfig load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("manifest '" + path.string() + "': " + e.what());
  }
  return config_from_json(j.at("config"));
}

NoiseSpec parse_noise_spec(const std::string& json_text,
                           std::uint64_t run_seed) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("--noise is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("--noise must be a JSON object");
  NoiseSpec spec = j.get<NoiseSpec>();
  if (!j.contains("seed")) spec.seed = derive_seed(run_seed, streams::kNoise);
  return spec;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Collects the files of one run. Each file is staged under a temporary name
// and renamed into place; if the run does not commit, everything written so
// far is removed.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
  }

  void write(const std::string& name, const std::string& contents) {
    const fs::path target = dir_ / name;
    const fs::path tmp = dir_ / ("." + name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write '" + tmp.string() + "'");
      out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
      if (!out) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error("cannot replace '" + target.string() + "': " + ec.message());
    }
    files_.push_back(target);
    digests_.push_back({name, contents.size(), fnv1a64(contents)});
  }

  void write_json(const std::string& name, const json& j) {
    write(name, j.dump(2) + "\n");
  }

  json digest_list() const {
    json list = json::array();
    for (const auto& d : digests_) {
      std::ostringstream hex;
      hex << std::hex << std::setw(16) << std::setfill('0') << d.hash;
      list.push_back({{"file", d.name}, {"bytes", d.size},
                      {"fnv1a64", hex.str()}});
    }
    return list;
  }

  const std::vector<fs::path>& files() const { return files_; }
  void commit() { committed_ = true; }

 private:
  struct Digest {
    std::string name;
    std::size_t size;
    std::uint64_t hash;
  };
  fs::path dir_;
  std::vector<fs::path> files_;
  std::vector<Digest> digests_;
  bool committed_ = false;
};

struct LoadedInput {
  Signal signal;
  StftConfig stft;
  NoiseDiagnostics diagnostics;
};

LoadedInput load_input(const RunConfig& config) {
  LoadedInput in;
  in.stft = config.stft;
  if (config.noise) {
    NoiseSpec spec = *config.noise;
    spec.frame_len = config.stft.frame_len;
    in.signal = generate_noise(spec, config.stft.sample_rate_hz,
                               &in.diagnostics);
  } else {
    in.signal = read_wav(config.inputs.front());
    in.stft.sample_rate_hz = in.signal.sample_rate_hz;
    in.diagnostics.peak = peak_amplitude(in.signal);
  }
  return in;
}

template <typename Writer>
std::string to_text(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

json diagnostics_json(const NoiseDiagnostics& d) {
  return {{"clipped_samples", d.clipped_samples}, {"gain", d.gain},
          {"peak", d.peak}};
}

int run_analyze(const RunConfig& config, OutputSet& out, std::ostream& log) {
  const LoadedInput in = load_input(config);
  const SpectrumSeries series = stft_magnitudes(in.signal, in.stft);
  const BinStatistics stats = estimate_bin_statistics(series);
  const BinRange bins = config.bins.value_or(BinRange::interior(series.n_bins()));
  const CvReport report = fit_consistent_cv(stats, bins);

  out.write("bin_stats.csv", to_text([&](std::ostream& o) {
              write_csv(o, stats, series.bin_freqs_hz());
            }));
  out.write_json("bin_stats.json", json(stats));
  json r = report;
  r["label"] = config.label;
  r["input_diagnostics"] = diagnostics_json(in.diagnostics);
  out.write_json("cv_report.json", r);
  if (config.dump_series) {
    out.write("series.csv",
              to_text([&](std::ostream& o) { write_csv(o, series); }));
    out.write("series.bin",
              to_text([&](std::ostream& o) { write_binary(o, series); }));
  }
  log << config.label << ": rho=" << report.rho << " c_s=" << report.c_s
      << " frames=" << report.n_frames << " bins=" << bins.to_string() << '\n';
  return 0;
}

int run_histogram(const RunConfig& config, OutputSet& out, std::ostream& log) {
  const LoadedInput in = load_input(config);
  const SpectrumSeries series = stft_magnitudes(in.signal, in.stft);
  const BinRange bins = config.bins.value_or(BinRange::interior(series.n_bins()));
  const HistogramFamily raw =
      bin_histograms(series, config.n_buckets, false, bins);
  const HistogramFamily norm =
      bin_histograms(series, config.n_buckets, true, bins);
  const PrototypeDistribution proto = estimate_prototype(norm);
  const BinStatistics stats = estimate_bin_statistics(series);

  out.write("histogram_raw.csv",
            to_text([&](std::ostream& o) { write_csv(o, raw); }));
  out.write("histogram_normalized.csv",
            to_text([&](std::ostream& o) { write_csv(o, norm); }));
  out.write_json("prototype.json", json(proto));

  json summary{{"label", config.label},
               {"included_bins", bins},
               {"n_frames", series.n_frames()},
               {"n_buckets", config.n_buckets},
               {"convergence_raw", raw.dispersion},
               {"convergence_normalized", norm.dispersion},
               {"convergence_ratio", norm.dispersion / raw.dispersion},
               {"excluded_bins", norm.excluded_bins},
               {"overflow_normalized", norm.overflow_count},
               {"prototype_mu0", proto.mu0},
               {"prototype_sigma0", proto.sigma0},
               {"prototype_cv", proto.cv()},
               {"input_diagnostics", diagnostics_json(in.diagnostics)}};
  if (std::abs(proto.mu0 - 1.0) <= 0.02) {
    out.write_json("scaling_model.json",
                   json(make_scaling_model(stats, proto, in.stft)));
  } else {
    summary["scaling_model_skipped"] = "prototype mean not within 0.02 of 1";
  }
  out.write_json("histogram_summary.json", summary);
  log << config.label << ": convergence raw=" << raw.dispersion
      << " normalized=" << norm.dispersion << " prototype cv=" << proto.cv()
      << '\n';
  return 0;
}

int run_verify(const RunConfig& config, OutputSet& out, std::ostream& log) {
  VerifyOptions options;
  options.seed = config.seed;
  options.stft = config.stft;
  if (config.noise) {
    options.corpus = *config.noise;
  } else {
    options.corpus.seed = derive_seed(config.seed, streams::kVerify);
  }
  const auto checks = run_property_suite(options);
  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    list.push_back({{"name", c.name}, {"passed", c.passed},
                    {"detail", c.detail}});
    log << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail
        << '\n';
  }
  out.write_json("verify.json", {{"passed", all}, {"checks", list}});
  return all ? 0 : 1;
}

int run_synth(const RunConfig& config, OutputSet& out, std::ostream& log) {
  std::ifstream in(config.inputs.front());
  if (!in) throw Error("cannot open model '" + config.inputs.front() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(config.inputs.front() + ": " + e.what());
  }
  const ScalingModel model = j.get<ScalingModel>();
  const std::uint64_t seed = derive_seed(config.seed, streams::kSynthesis);
  Signal signal = synthesize(model, config.frames, seed);
  const double peak = peak_amplitude(signal);
  const double gain = peak > 1.0 ? 0.99 / peak : 1.0;
  if (gain != 1.0) {
    for (double& x : signal.samples) x *= gain;
  }
  std::size_t saturated = 0;
  const auto bytes = encode_wav(signal, &saturated);
  out.write("synth.wav", std::string(bytes.begin(), bytes.end()));
  out.write_json("synth.json", {{"label", config.label},
                                {"frames", config.frames},
                                {"seed", seed},
                                {"samples", signal.size()},
                                {"sample_rate_hz", signal.sample_rate_hz},
                                {"peak_before_gain", peak},
                                {"gain", gain},
                                {"saturated_samples", saturated}});
  log << "synthesized " << signal.size() << " samples, peak " << peak
      << ", gain " << gain << '\n';
  return 0;
}

int run_report(const RunConfig& config, OutputSet& out, std::ostream& log) {
  const auto rows = read_summary_rows(config.inputs);
  json list = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "label,rho,c_s,n_frames\n";
  for (const auto& r : rows) {
    list.push_back({{"label", r.label}, {"rho", r.rho}, {"c_s", r.c_s},
                    {"n_frames", r.n_frames}});
    csv << r.label << ',' << r.rho << ',' << r.c_s << ',' << r.n_frames
        << '\n';
  }
  out.write("summary.csv", csv.str());
  out.write_json("summary.json", {{"rows", list}});
  log << format_summary_table(rows);
  return 0;
}

}  // namespace

std::vector<SummaryRow> read_summary_rows(
    const std::vector<std::string>& report_paths) {
  std::vector<SummaryRow> rows;
  for (const auto& path : report_paths) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open report '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw FormatError(path + ": " + e.what());
    }
    SummaryRow row;
    row.label = j.value("label", fs::path(path).parent_path().filename().string());
    row.rho = j.at("rho").get<double>();
    row.c_s = j.at("c_s").get<double>();
    row.n_frames = j.at("n_frames").get<std::size_t>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.label.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "label"
      << "  " << std::setw(8) << "rho" << "  " << std::setw(8) << "c_s"
      << "  frames\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.label << "  "
        << std::fixed << std::setprecision(4) << std::setw(8) << r.rho << "  "
        << std::setw(8) << r.c_s << "  " << r.n_frames << '\n';
  }
  return out.str();
}

RunResult run(const RunConfig& config, std::ostream& log) {
  RunResult result;
  try {
    config.validate();
    OutputSet out(config.output_dir);
    int code = 0;
    switch (config.command) {
      case Command::analyze: code = run_analyze(config, out, log); break;
      case Command::histogram: code = run_histogram(config, out, log); break;
      case Command::verify: code = run_verify(config, out, log); break;
      case Command::synth: code = run_synth(config, out, log); break;
      case Command::report: code = run_report(config, out, log); break;
    }
    const json manifest{{"tool", "ampstat"},
                        {"version", AMPSTAT_VERSION},
                        {"config", config_to_json(config)},
                        {"seed_streams",
                         {{"noise", streams::kNoise},
                          {"synthesis", streams::kSynthesis},
                          {"verify", streams::kVerify}}},
                        {"outputs", out.digest_list()}};
    out.write_json("manifest.json", manifest);
    out.commit();
    result.files = out.files();
    result.exit_code = code;
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
    log << "error: " << e.what() << '\n';
  }
  return result;
}

}  // namespace ampstat
