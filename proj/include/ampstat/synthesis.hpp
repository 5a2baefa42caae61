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

#ifndef AMPSTAT_SYNTHESIS_HPP_
#define AMPSTAT_SYNTHESIS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ampstat/bin_stats.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/random.hpp"
#include "ampstat/signal.hpp"
#include "ampstat/spectral.hpp"

namespace ampstat {

// Generative amplitude model: the amplitude of bin k is envelope[k] * a0 with
// a0 drawn from a shared unit-mean prototype.
struct ScalingModel {
  std::vector<double> envelope;
  PrototypeDistribution prototype;
  StftConfig config;

  // Envelope length must equal config.n_bins(), entries finite and >= 0,
  // prototype mean within 0.02 of 1.
  void validate() const;
};

// Envelope k = mu / mu0 from measured statistics.
ScalingModel make_scaling_model(const BinStatistics& stats,
                                const PrototypeDistribution& prototype,
                                const StftConfig& config);

// Inverse-CDF sampler for a piecewise-constant density. Within a bucket the
// CDF is linear, so the inverse places the draw uniformly inside it.
class PrototypeSampler {
 public:
  explicit PrototypeSampler(const PrototypeDistribution& proto);

  double operator()(Rng& rng) const;

 private:
  std::vector<double> edges_;
  std::vector<double> cdf_;  // cdf_[i] = mass of buckets < i, cdf_.back() == 1
};

std::vector<double> sample_prototype(const PrototypeDistribution& proto,
                                     std::size_t n, std::uint64_t seed);

// Random-phase overlap-add synthesis. Frame f uses the engine seeded with
// derive_seed(seed, f). Interior bins get uniform phase; DC and Nyquist get a
// random sign. Frames are windowed with the analysis window, overlap-added
// at config.hop and divided by the summed squared window (floored at its
// steady-state minimum so the first and last half-frames stay bounded).
// Output length is (n_frames - 1) * hop + frame_len.
Signal synthesize(const ScalingModel& model, std::size_t n_frames,
                  std::uint64_t seed);

}  // namespace ampstat

#endif  // AMPSTAT_SYNTHESIS_HPP_
