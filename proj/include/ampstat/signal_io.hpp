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

#ifndef AMPSTAT_SIGNAL_IO_HPP_
#define AMPSTAT_SIGNAL_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ampstat/signal.hpp"
#include "ampstat/synthesis.hpp"

namespace ampstat {

// 16-bit PCM mono only. Samples are mapped to [-1, 1) by division by 32768.
Signal read_wav(const std::filesystem::path& path);

// Writes 16-bit PCM mono. Samples are rounded to the nearest multiple of
// 1/32768 and saturated. Returns the number of saturated samples.
std::size_t write_wav(const std::filesystem::path& path, const Signal& signal);

// Encoded WAV bytes; write_wav is a thin wrapper over this.
std::vector<std::uint8_t> encode_wav(const Signal& signal,
                                     std::size_t* saturated = nullptr);
Signal decode_wav(const std::vector<std::uint8_t>& bytes);

enum class NoiseKind { white_gaussian, filtered_gaussian, constant_tone,
                       model_based };

std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string& name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::white_gaussian;
  double duration_s = 1.0;
  std::uint64_t seed = 0;
  // filtered_gaussian: per-bin gain, length frame_len / 2 + 1
  std::optional<std::vector<double>> envelope;
  // Analysis frame the signal must cover; also fixes the envelope length.
  std::size_t frame_len = 512;
  // constant_tone
  double tone_hz = 1000.0;
  double tone_amplitude = 1.0;
  // model_based; defaults to a flat envelope with a Rayleigh prototype
  std::optional<ScalingModel> model;

  void validate(int sample_rate_hz) const;
};

struct NoiseDiagnostics {
  std::size_t clipped_samples = 0;
  double gain = 1.0;  // applied so that 3.5 sigma maps to full scale
  double peak = 0.0;
};

// Gaussian kinds are scaled so 3.5 standard deviations equal 1.0; samples
// beyond are hard-clipped and counted.
Signal generate_noise(const NoiseSpec& spec, int sample_rate_hz,
                      NoiseDiagnostics* diagnostics = nullptr);

// Linear-phase FIR of length frame_len whose DFT magnitude at bin k equals
// envelope[k]; used to shape filtered_gaussian noise.
std::vector<double> envelope_to_fir(const std::vector<double>& envelope);

}  // namespace ampstat

#endif  // AMPSTAT_SIGNAL_IO_HPP_
