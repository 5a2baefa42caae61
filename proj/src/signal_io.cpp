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

#include "ampstat/signal_io.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ampstat/error.hpp"
#include "ampstat/fft.hpp"
#include "ampstat/random.hpp"

namespace ampstat {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const std::uint8_t* p, const char* tag) {
  return std::memcmp(p, tag, 4) == 0;
}

}  // namespace

Signal decode_wav(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12 || !tag_is(bytes.data(), "RIFF") ||
      !tag_is(bytes.data() + 8, "WAVE")) {
    throw FormatError("not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;

    if (tag_is(chunk, "fmt ")) {
      if (size < 16 || size > available) throw FormatError("truncated fmt chunk");
      const std::uint8_t* f = bytes.data() + body;
      std::uint16_t format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible && size >= 40) {
        format = read_u16(f + 24);  // first two bytes of the sub-format GUID
      }
      if (format != kFormatPcm) {
        throw FormatError("unsupported WAV encoding (format tag " +
                          std::to_string(format) + "); only PCM is accepted");
      }
      have_fmt = true;
    } else if (tag_is(chunk, "data")) {
      if (!have_fmt) throw FormatError("data chunk precedes fmt chunk");
      if (channels != 1) {
        throw FormatError("expected mono audio, file has " +
                          std::to_string(channels) + " channels");
      }
      if (bits != 16) {
        throw FormatError("expected 16-bit samples, file has " +
                          std::to_string(bits) + "-bit samples");
      }
      if (rate == 0) throw FormatError("sample rate of 0 in WAV header");
      // Streaming writers may leave the size field oversized.
      const std::size_t n_bytes = std::min(size, available) & ~std::size_t{1};
      Signal s;
      s.sample_rate_hz = static_cast<int>(rate);
      s.samples.resize(n_bytes / 2);
      const std::uint8_t* d = bytes.data() + body;
      for (std::size_t i = 0; i < s.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(read_u16(d + 2 * i));
        s.samples[i] = static_cast<double>(v) / 32768.0;
      }
      return s;
    }
    pos = body + size + (size & 1);
  }
  throw FormatError(have_fmt ? "WAV file has no data chunk"
                             : "WAV file has no fmt chunk");
}

Signal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const Signal& signal,
                                     std::size_t* saturated) {
  if (signal.sample_rate_hz <= 0) {
    throw InvalidArgument("sample rate must be positive");
  }
  const std::size_t data_bytes = signal.samples.size() * 2;
  if (data_bytes > 0xFFFFFFFFu - 36) {
    throw InvalidArgument("signal too long for a RIFF file");
  }
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate_hz) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_bytes));
  std::size_t clipped = 0;
  for (double x : signal.samples) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite sample");
    double q = std::nearbyint(x * 32768.0);
    if (q > 32767.0 || q < -32768.0) {
      ++clipped;
      q = std::clamp(q, -32768.0, 32767.0);
    }
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  if (saturated) *saturated = clipped;
  return out;
}

std::size_t write_wav(const std::filesystem::path& path, const Signal& signal) {
  std::size_t clipped = 0;
  const auto bytes = encode_wav(signal, &clipped);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for '" + path.string() + "'");
  return clipped;
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::white_gaussian: return "white_gaussian";
    case NoiseKind::filtered_gaussian: return "filtered_gaussian";
    case NoiseKind::constant_tone: return "constant_tone";
    case NoiseKind::model_based: return "model_based";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(const std::string& name) {
  for (auto kind : {NoiseKind::white_gaussian, NoiseKind::filtered_gaussian,
                    NoiseKind::constant_tone, NoiseKind::model_based}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown noise kind '" + name + "'");
}

void NoiseSpec::validate(int sample_rate_hz) const {
  if (sample_rate_hz <= 0) throw InvalidArgument("sample rate must be > 0");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw InvalidArgument("duration_s must be positive");
  }
  if (frame_len < 2 || !is_power_of_two(frame_len)) {
    throw InvalidArgument("frame_len must be a power of two >= 2");
  }
  const double n = std::round(duration_s * sample_rate_hz);
  if (n < static_cast<double>(frame_len)) {
    throw InvalidArgument("duration " + std::to_string(duration_s) +
                          " s is shorter than one analysis frame of " +
                          std::to_string(frame_len) + " samples");
  }
  if (envelope && envelope->size() != frame_len / 2 + 1) {
    throw InvalidArgument("envelope has " + std::to_string(envelope->size()) +
                          " entries, expected " +
                          std::to_string(frame_len / 2 + 1));
  }
  if (kind == NoiseKind::filtered_gaussian && !envelope) {
    throw InvalidArgument("filtered_gaussian noise needs an envelope");
  }
  if (kind == NoiseKind::constant_tone &&
      (!(tone_hz >= 0.0) || tone_hz > sample_rate_hz / 2.0)) {
    throw InvalidArgument("tone frequency must lie in [0, Nyquist]");
  }
  if (kind == NoiseKind::model_based && model) {
    model->validate();
    if (model->config.sample_rate_hz != sample_rate_hz) {
      throw InvalidArgument("model sample rate differs from requested rate");
    }
  }
}

std::vector<double> envelope_to_fir(const std::vector<double>& envelope) {
  if (envelope.size() < 2) throw InvalidArgument("envelope too short");
  const std::size_t n = 2 * (envelope.size() - 1);
  if (!is_power_of_two(n)) {
    throw InvalidArgument("envelope length must be 2^m / 2 + 1");
  }
  for (double e : envelope) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("envelope entries must be finite and >= 0");
    }
  }
  std::vector<std::complex<double>> spectrum(n);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    spectrum[k] = envelope[k];
    if (k > 0 && k < n / 2) spectrum[n - k] = envelope[k];
  }
  Fft(n).inverse(spectrum);
  // Zero-phase response rotated by n/2 samples to make it causal.
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = spectrum[(i + n / 2) % n].real();
  return h;
}

namespace {

// Linear convolution of white noise with h, keeping only outputs where the
// filter fully overlaps the input so the result is stationary from sample 0.
std::vector<double> filter_valid(const std::vector<double>& x,
                                 const std::vector<double>& h,
                                 std::size_t n_out) {
  const std::size_t taps = h.size();
  const std::size_t m = 4 * taps;
  const std::size_t block = m - taps;
  const Fft fft(m);

  std::vector<std::complex<double>> hf(m);
  for (std::size_t i = 0; i < taps; ++i) hf[i] = h[i];
  fft.forward(hf);

  std::vector<double> y(x.size() + taps, 0.0);
  std::vector<std::complex<double>> buf(m);
  for (std::size_t start = 0; start < x.size(); start += block) {
    const std::size_t len = std::min(block, x.size() - start);
    std::fill(buf.begin(), buf.end(), std::complex<double>{});
    for (std::size_t i = 0; i < len; ++i) buf[i] = x[start + i];
    fft.forward(buf);
    for (std::size_t i = 0; i < m; ++i) buf[i] *= hf[i];
    fft.inverse(buf);
    const std::size_t end = std::min(m, y.size() - start);
    for (std::size_t i = 0; i < end; ++i) y[start + i] += buf[i].real();
  }
  return std::vector<double>(y.begin() + (taps - 1),
                             y.begin() + (taps - 1) + n_out);
}

std::size_t apply_gain_and_clip(std::vector<double>& x, double gain) {
  std::size_t clipped = 0;
  for (double& v : x) {
    v *= gain;
    if (v > 1.0 || v < -1.0) {
      ++clipped;
      v = std::clamp(v, -1.0, 1.0);
    }
  }
  return clipped;
}

constexpr double kHeadroomSigmas = 3.5;

}  // namespace

Signal generate_noise(const NoiseSpec& spec, int sample_rate_hz,
                      NoiseDiagnostics* diagnostics) {
  spec.validate(sample_rate_hz);
  const auto n = static_cast<std::size_t>(
      std::llround(spec.duration_s * sample_rate_hz));

  Signal signal;
  signal.sample_rate_hz = sample_rate_hz;
  NoiseDiagnostics diag;

  switch (spec.kind) {
    case NoiseKind::white_gaussian: {
      Rng rng(spec.seed);
      signal.samples.resize(n);
      for (double& v : signal.samples) v = rng.normal();
      diag.gain = 1.0 / kHeadroomSigmas;
      diag.clipped_samples = apply_gain_and_clip(signal.samples, diag.gain);
      break;
    }
    case NoiseKind::filtered_gaussian: {
      const std::vector<double> h = envelope_to_fir(*spec.envelope);
      double energy = 0.0;
      for (double c : h) energy += c * c;
      if (!(energy > 0.0)) {
        throw InvalidArgument("filtered_gaussian envelope is all zeros");
      }
      Rng rng(spec.seed);
      std::vector<double> white(n + h.size() - 1);
      for (double& v : white) v = rng.normal();
      signal.samples = filter_valid(white, h, n);
      diag.gain = 1.0 / (kHeadroomSigmas * std::sqrt(energy));
      diag.clipped_samples = apply_gain_and_clip(signal.samples, diag.gain);
      break;
    }
    case NoiseKind::constant_tone: {
      signal.samples.resize(n);
      const double w = 2.0 * std::numbers::pi * spec.tone_hz / sample_rate_hz;
      for (std::size_t i = 0; i < n; ++i) {
        signal.samples[i] = spec.tone_amplitude *
                            std::cos(w * static_cast<double>(i));
      }
      diag.clipped_samples = apply_gain_and_clip(signal.samples, 1.0);
      break;
    }
    case NoiseKind::model_based: {
      ScalingModel model;
      if (spec.model) {
        model = *spec.model;
      } else {
        model.config.frame_len = spec.frame_len;
        model.config.hop = spec.frame_len / 2;
        model.config.sample_rate_hz = sample_rate_hz;
        model.envelope.assign(model.config.n_bins(), 1.0);
        model.prototype = rayleigh_prototype();
      }
      const StftConfig& c = model.config;
      const std::size_t n_frames =
          n <= c.frame_len ? 1 : (n - c.frame_len + c.hop - 1) / c.hop + 1;
      signal = synthesize(model, n_frames, spec.seed);
      signal.samples.resize(n);
      double power = 0.0;
      for (double v : signal.samples) power += v * v;
      const double rms = std::sqrt(power / static_cast<double>(n));
      diag.gain = rms > 0.0 ? 1.0 / (kHeadroomSigmas * rms) : 1.0;
      diag.clipped_samples = apply_gain_and_clip(signal.samples, diag.gain);
      break;
    }
  }
  diag.peak = peak_amplitude(signal);
  if (diagnostics) *diagnostics = diag;
  return signal;
}

}  // namespace ampstat
