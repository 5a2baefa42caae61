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

#include "ampstat/spectral.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "ampstat/error.hpp"

namespace ampstat {

std::string to_string(WindowKind kind) {
  return kind == WindowKind::hamming ? "hamming" : "rectangular";
}

WindowKind parse_window_kind(const std::string& name) {
  if (name == "hamming") return WindowKind::hamming;
  if (name == "rectangular") return WindowKind::rectangular;
  throw InvalidArgument("unknown window '" + name +
                        "' (expected hamming or rectangular)");
}

void StftConfig::validate() const {
  if (frame_len < 2 || !is_power_of_two(frame_len)) {
    throw InvalidArgument("frame_len must be a power of two >= 2, got " +
                          std::to_string(frame_len));
  }
  if (hop < 1 || hop > frame_len) {
    throw InvalidArgument("hop must be in [1, frame_len], got " +
                          std::to_string(hop));
  }
  if (sample_rate_hz <= 0) {
    throw InvalidArgument("sample rate must be positive");
  }
}

std::vector<double> hamming_window(std::size_t n) {
  if (n < 2) throw InvalidArgument("Hamming window needs n >= 2");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i <= (n - 1) / 2; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i) / denom);
    w[n - 1 - i] = w[i];
  }
  return w;
}

std::vector<double> make_window(WindowKind kind, std::size_t n) {
  if (kind == WindowKind::hamming) return hamming_window(n);
  return std::vector<double>(n, 1.0);
}

std::size_t frame_count(std::size_t n_samples, const StftConfig& config) {
  if (n_samples < config.frame_len) return 0;
  return (n_samples - config.frame_len) / config.hop + 1;
}

SpectrumSeries::SpectrumSeries(StftConfig config, std::size_t n_frames,
                               std::vector<double> amplitudes)
    : config_(config),
      n_frames_(n_frames),
      n_bins_(config.n_bins()),
      amplitudes_(std::move(amplitudes)) {
  config_.validate();
  if (amplitudes_.size() != n_frames_ * n_bins_) {
    throw InvalidArgument("amplitude matrix has " +
                          std::to_string(amplitudes_.size()) +
                          " values, expected " +
                          std::to_string(n_frames_ * n_bins_));
  }
  for (double a : amplitudes_) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw InvalidArgument("amplitudes must be finite and non-negative");
    }
  }
  bin_freqs_hz_.resize(n_bins_);
  for (std::size_t k = 0; k < n_bins_; ++k) {
    bin_freqs_hz_[k] = static_cast<double>(k) * config_.sample_rate_hz /
                       static_cast<double>(config_.frame_len);
  }
}

std::vector<double> SpectrumSeries::column(std::size_t bin) const {
  std::vector<double> out(n_frames_);
  for (std::size_t f = 0; f < n_frames_; ++f) out[f] = at(f, bin);
  return out;
}

SpectrumSeries SpectrumSeries::scaled(double factor) const {
  if (!(factor > 0.0)) throw InvalidArgument("scale factor must be > 0");
  std::vector<double> a(amplitudes_);
  for (double& x : a) x *= factor;
  return SpectrumSeries(config_, n_frames_, std::move(a));
}

void one_sided_magnitudes(std::span<const double> windowed_frame,
                          const Fft& fft, std::span<double> out) {
  const std::size_t n = fft.size();
  if (windowed_frame.size() != n || out.size() != n / 2 + 1) {
    throw InvalidArgument("frame/output size does not match the transform");
  }
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = windowed_frame[i];
  fft.forward(buf);
  for (std::size_t k = 0; k <= n / 2; ++k) out[k] = std::abs(buf[k]);
}

SpectrumSeries stft_magnitudes(const Signal& signal, const StftConfig& config) {
  config.validate();
  if (signal.sample_rate_hz != config.sample_rate_hz) {
    throw InvalidArgument("signal sample rate " +
                          std::to_string(signal.sample_rate_hz) +
                          " Hz does not match analysis config " +
                          std::to_string(config.sample_rate_hz) + " Hz");
  }
  if (signal.size() < config.frame_len) {
    throw InvalidArgument("signal has " + std::to_string(signal.size()) +
                          " samples, shorter than one frame of " +
                          std::to_string(config.frame_len));
  }
  const std::size_t n = config.frame_len;
  const std::size_t n_bins = config.n_bins();
  const std::size_t n_frames = frame_count(signal.size(), config);
  const std::vector<double> window = make_window(config.window, n);
  const Fft fft(n);

  std::vector<double> amplitudes(n_frames * n_bins);
  std::vector<double> frame(n);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* src = signal.samples.data() + f * config.hop;
    for (std::size_t i = 0; i < n; ++i) frame[i] = src[i] * window[i];
    one_sided_magnitudes(frame, fft,
                         std::span<double>(amplitudes.data() + f * n_bins,
                                           n_bins));
  }
  return SpectrumSeries(config, n_frames, std::move(amplitudes));
}

void write_csv(std::ostream& out, const SpectrumSeries& series) {
  out.precision(17);
  out << "frame";
  for (double f : series.bin_freqs_hz()) out << ',' << f;
  out << '\n';
  for (std::size_t f = 0; f < series.n_frames(); ++f) {
    out << f;
    for (double a : series.row(f)) out << ',' << a;
    out << '\n';
  }
}

namespace {

constexpr char kMagic[8] = {'A', 'M', 'P', 'S', 'P', 'E', 'C', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw FormatError("truncated spectrum dump");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_binary(std::ostream& out, const SpectrumSeries& series) {
  const StftConfig& c = series.config();
  out.write(kMagic, sizeof(kMagic));
  put_le<std::uint64_t>(out, series.n_frames());
  put_le<std::uint64_t>(out, series.n_bins());
  put_le<std::uint64_t>(out, c.frame_len);
  put_le<std::uint64_t>(out, c.hop);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(c.sample_rate_hz));
  put_le<std::uint32_t>(out, c.window == WindowKind::hamming ? 0u : 1u);
  for (double a : series.amplitudes()) put_le<double>(out, a);
}

SpectrumSeries read_binary(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a spectrum dump (bad magic)");
  }
  const auto n_frames = get_le<std::uint64_t>(in);
  const auto n_bins = get_le<std::uint64_t>(in);
  StftConfig c;
  c.frame_len = get_le<std::uint64_t>(in);
  c.hop = get_le<std::uint64_t>(in);
  c.sample_rate_hz = static_cast<int>(get_le<std::uint32_t>(in));
  const auto window = get_le<std::uint32_t>(in);
  if (window > 1) throw FormatError("unknown window code in spectrum dump");
  c.window = window == 0 ? WindowKind::hamming : WindowKind::rectangular;
  c.validate();
  if (n_bins != c.n_bins()) {
    throw FormatError("bin count inconsistent with frame length");
  }
  std::vector<double> a(n_frames * n_bins);
  for (double& x : a) x = get_le<double>(in);
  return SpectrumSeries(c, n_frames, std::move(a));
}

}  // namespace ampstat
