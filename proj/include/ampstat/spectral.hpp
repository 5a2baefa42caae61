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

#ifndef AMPSTAT_SPECTRAL_HPP_
#define AMPSTAT_SPECTRAL_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ampstat/fft.hpp"
#include "ampstat/signal.hpp"

namespace ampstat {

enum class WindowKind { hamming, rectangular };

std::string to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string& name);

struct StftConfig {
  std::size_t frame_len = 512;
  std::size_t hop = 256;
  WindowKind window = WindowKind::hamming;
  int sample_rate_hz = 16000;

  // Throws InvalidArgument unless frame_len is a power of two >= 2,
  // 1 <= hop <= frame_len and sample_rate_hz > 0.
  void validate() const;

  std::size_t n_bins() const { return frame_len / 2 + 1; }

  bool operator==(const StftConfig&) const = default;
};

// Symmetric Hamming window, w[i] = 0.54 - 0.46 cos(2 pi i / (n - 1)).
// Exactly symmetric: w[i] == w[n - 1 - i].
std::vector<double> hamming_window(std::size_t n);

std::vector<double> make_window(WindowKind kind, std::size_t n);

// Number of full frames that fit in n_samples. Partial trailing frames are
// dropped.
std::size_t frame_count(std::size_t n_samples, const StftConfig& config);

// Per-frame one-sided amplitude spectrum |X(w_k)|, stored row-major as
// [n_frames x n_bins].
class SpectrumSeries {
 public:
  SpectrumSeries(StftConfig config, std::size_t n_frames,
                 std::vector<double> amplitudes);

  std::size_t n_frames() const { return n_frames_; }
  std::size_t n_bins() const { return n_bins_; }
  const StftConfig& config() const { return config_; }

  double at(std::size_t frame, std::size_t bin) const {
    return amplitudes_[frame * n_bins_ + bin];
  }
  std::span<const double> row(std::size_t frame) const {
    return {amplitudes_.data() + frame * n_bins_, n_bins_};
  }
  std::span<const double> amplitudes() const { return amplitudes_; }
  std::vector<double> column(std::size_t bin) const;

  // bin_freqs_hz[k] = k * sample_rate_hz / frame_len
  const std::vector<double>& bin_freqs_hz() const { return bin_freqs_hz_; }

  // Copy with every amplitude multiplied by factor (> 0).
  SpectrumSeries scaled(double factor) const;

 private:
  StftConfig config_;
  std::size_t n_frames_;
  std::size_t n_bins_;
  std::vector<double> amplitudes_;
  std::vector<double> bin_freqs_hz_;
};

// Magnitudes of bins 0..N/2 of an already-windowed frame of length
// fft.size(). `out` must hold fft.size() / 2 + 1 values.
void one_sided_magnitudes(std::span<const double> windowed_frame,
                          const Fft& fft, std::span<double> out);

// Frames at offsets 0, hop, 2*hop, ...; each windowed, transformed and
// reduced to one-sided magnitudes. Requires signal.size() >= frame_len and a
// matching sample rate.
SpectrumSeries stft_magnitudes(const Signal& signal, const StftConfig& config);

// CSV: header "frame,<f_0>,<f_1>,..." then one row per frame.
void write_csv(std::ostream& out, const SpectrumSeries& series);

// Binary dump, little-endian:
//   8 bytes magic "AMPSPEC1"
//   u64 n_frames, u64 n_bins
//   u64 frame_len, u64 hop, u32 sample_rate_hz, u32 window (0 hamming, 1 rect)
//   n_frames * n_bins f64 amplitudes, row-major
void write_binary(std::ostream& out, const SpectrumSeries& series);
SpectrumSeries read_binary(std::istream& in);

}  // namespace ampstat

#endif  // AMPSTAT_SPECTRAL_HPP_
