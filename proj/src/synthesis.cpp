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

#include "ampstat/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ampstat/error.hpp"
#include "ampstat/fft.hpp"

namespace ampstat {

void ScalingModel::validate() const {
  config.validate();
  if (envelope.size() != config.n_bins()) {
    throw InvalidArgument("envelope has " + std::to_string(envelope.size()) +
                          " entries, config expects " +
                          std::to_string(config.n_bins()));
  }
  for (double e : envelope) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("envelope entries must be finite and >= 0");
    }
  }
  if (prototype.density.empty() ||
      prototype.edges.size() != prototype.density.size() + 1) {
    throw InvalidArgument("scaling model has no prototype grid");
  }
  if (std::abs(prototype.mu0 - 1.0) > 0.02) {
    throw InvalidArgument("prototype mean " + std::to_string(prototype.mu0) +
                          " is not within 0.02 of 1");
  }
}

ScalingModel make_scaling_model(const BinStatistics& stats,
                                const PrototypeDistribution& prototype,
                                const StftConfig& config) {
  ScalingModel model;
  model.envelope.resize(stats.n_bins());
  for (std::size_t k = 0; k < stats.n_bins(); ++k) {
    model.envelope[k] = stats.mu[k] / prototype.mu0;
  }
  model.prototype = prototype;
  model.config = config;
  model.validate();
  return model;
}

PrototypeSampler::PrototypeSampler(const PrototypeDistribution& proto)
    : edges_(proto.edges) {
  if (proto.density.empty() || edges_.size() != proto.density.size() + 1) {
    throw InvalidArgument("prototype grid is malformed");
  }
  cdf_.resize(edges_.size());
  cdf_[0] = 0.0;
  for (std::size_t i = 0; i < proto.density.size(); ++i) {
    cdf_[i + 1] = cdf_[i] + proto.density[i] * (edges_[i + 1] - edges_[i]);
  }
  const double total = cdf_.back();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidArgument("cannot sample from a degenerate (all-zero) density");
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double PrototypeSampler::operator()(Rng& rng) const {
  const double u = rng.uniform();
  // First bucket whose upper cumulative mass exceeds u; empty buckets have
  // equal consecutive entries and are skipped by upper_bound.
  auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), u);
  if (it == cdf_.end()) --it;
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  const double mass = cdf_[i + 1] - cdf_[i];
  const double frac = mass > 0.0 ? (u - cdf_[i]) / mass : 0.5;
  return edges_[i] + std::clamp(frac, 0.0, 1.0) * (edges_[i + 1] - edges_[i]);
}

std::vector<double> sample_prototype(const PrototypeDistribution& proto,
                                     std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample count must be >= 1");
  const PrototypeSampler sampler(proto);
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = sampler(rng);
  return out;
}

Signal synthesize(const ScalingModel& model, std::size_t n_frames,
                  std::uint64_t seed) {
  model.validate();
  if (n_frames == 0) throw InvalidArgument("n_frames must be >= 1");

  const StftConfig& c = model.config;
  const std::size_t n = c.frame_len;
  const std::size_t half = n / 2;
  const std::vector<double> window = make_window(c.window, n);
  const PrototypeSampler sampler(model.prototype);
  const Fft fft(n);

  const std::size_t length = (n_frames - 1) * c.hop + n;
  std::vector<double> out(length, 0.0);
  std::vector<double> weight(length, 0.0);
  std::vector<std::complex<double>> spectrum(n);

  for (std::size_t f = 0; f < n_frames; ++f) {
    Rng rng(derive_seed(seed, f));
    for (std::size_t k = 0; k <= half; ++k) {
      const double a = model.envelope[k] * sampler(rng);
      if (k == 0 || k == half) {
        spectrum[k] = rng.uniform() < 0.5 ? -a : a;
      } else {
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        spectrum[k] = std::polar(a, phase);
        spectrum[n - k] = std::conj(spectrum[k]);
      }
    }
    fft.inverse(spectrum);
    const std::size_t offset = f * c.hop;
    for (std::size_t i = 0; i < n; ++i) {
      out[offset + i] += window[i] * spectrum[i].real();
      weight[offset + i] += window[i] * window[i];
    }
  }

  // Smallest summed squared window over one hop period once frames fully
  // overlap; used as the floor for the partially covered ends.
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.hop; ++i) {
    double s = 0.0;
    for (std::size_t j = i; j < n; j += c.hop) s += window[j] * window[j];
    floor = std::min(floor, s);
  }
  for (std::size_t i = 0; i < length; ++i) {
    out[i] /= std::max(weight[i], floor);
  }

  Signal signal;
  signal.samples = std::move(out);
  signal.sample_rate_hz = c.sample_rate_hz;
  return signal;
}

}  // namespace ampstat
