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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "ampstat/bin_stats.hpp"
#include "ampstat/error.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/serialization.hpp"
#include "ampstat/spectral.hpp"
#include "ampstat/synthesis.hpp"
#include "oracles.hpp"

using namespace ampstat;

namespace {

std::vector<double> raised_cosine_envelope(std::size_t n_bins) {
  std::vector<double> env(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    env[k] = 2.5 - 1.5 * std::cos(std::numbers::pi * k / double(n_bins - 1));
  }
  return env;
}

ScalingModel model_with(std::vector<double> envelope) {
  ScalingModel m;
  m.prototype = rayleigh_prototype();
  m.config = StftConfig{};
  m.envelope = std::move(envelope);
  return m;
}

// Least-squares scale s minimizing sum (s * a - b)^2.
double ls_scale(const std::vector<double>& a, const std::vector<double>& b,
                BinRange r) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = r.first; k <= r.last; ++k) {
    num += a[k] * b[k];
    den += a[k] * a[k];
  }
  return num / den;
}

}  // namespace

TEST_CASE("sample_prototype stays on the support and matches the mean") {
  const auto proto = rayleigh_prototype();
  const auto draws = sample_prototype(proto, 1000000, 17);
  double sum = 0.0;
  for (double x : draws) {
    REQUIRE(x >= proto.edges.front());
    REQUIRE(x <= proto.edges.back());
    sum += x;
  }
  CHECK(std::abs(sum / draws.size() - proto.mu0) <= 0.005);
  CHECK(std::abs(oracle::cv_of(draws) - proto.cv()) <= 0.005);
  CHECK(sample_prototype(proto, 1000, 17) ==
        std::vector<double>(draws.begin(), draws.begin() + 1000));
  CHECK(sample_prototype(proto, 1000, 18) != sample_prototype(proto, 1000, 17));
}

TEST_CASE("sample_prototype respects empty buckets") {
  // mass only in [1, 1.5) and [3, 3.5)
  auto edges = uniform_edges(8, 4.0);
  std::vector<double> d(8, 0.0);
  d[2] = 1.0;
  d[6] = 1.0;
  const auto proto = PrototypeDistribution::from_density(edges, d);
  std::size_t low = 0;
  for (double x : sample_prototype(proto, 20000, 5)) {
    const bool in_low = x >= 1.0 && x <= 1.5;
    const bool in_high = x >= 3.0 && x <= 3.5;
    REQUIRE((in_low || in_high));
    low += in_low;
  }
  CHECK(std::abs(low / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("sample_prototype rejects degenerate input") {
  PrototypeDistribution empty;
  empty.edges = uniform_edges(8, 1.0);
  empty.density.assign(8, 0.0);
  CHECK_THROWS_AS(sample_prototype(empty, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(sample_prototype(rayleigh_prototype(), 0, 1), InvalidArgument);
}

TEST_CASE("ScalingModel validation") {
  auto m = model_with(std::vector<double>(257, 1.0));
  CHECK_NOTHROW(m.validate());
  m.envelope.pop_back();
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m.envelope.assign(257, 1.0);
  m.envelope[3] = -1.0;
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m.envelope[3] = std::nan("");
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m.envelope[3] = 1.0;
  const auto wide = scale_density(rayleigh_prototype(), 1.5);
  m.prototype = PrototypeDistribution::from_density(wide.edges, wide.density);
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
}

TEST_CASE("make_scaling_model divides by the prototype mean") {
  BinStatistics stats;
  stats.n_frames = 4;
  stats.mu = {2.0, 4.0, 0.0};
  stats.var = {1.0, 1.0, 0.0};
  stats.sigma = {1.0, 1.0, 0.0};
  stats.cv = {0.5, 0.25, std::nullopt};
  StftConfig c;
  c.frame_len = 4;
  c.hop = 2;
  const auto proto = rayleigh_prototype();
  const auto m = make_scaling_model(stats, proto, c);
  CHECK(m.envelope[0] == doctest::Approx(2.0 / proto.mu0).epsilon(1e-15));
  CHECK(m.envelope[1] == doctest::Approx(4.0 / proto.mu0).epsilon(1e-15));
  CHECK(m.envelope[2] == 0.0);
  CHECK_THROWS_AS(make_scaling_model(stats, proto, StftConfig{}), InvalidArgument);

  const auto back = json(m).get<ScalingModel>();
  CHECK(back.envelope == m.envelope);
  CHECK(back.config == m.config);
}

TEST_CASE("synthesize: shape, determinism, zeros") {
  const auto m = model_with(raised_cosine_envelope(257));
  const auto a = synthesize(m, 50, 7);
  CHECK(a.size() == 49 * 256 + 512);
  CHECK(a.sample_rate_hz == 16000);
  for (double x : a.samples) REQUIRE(std::isfinite(x));
  CHECK(synthesize(m, 50, 7).samples == a.samples);
  CHECK(synthesize(m, 50, 8).samples != a.samples);
  // Frame f depends only on (seed, f): a shorter run is a prefix up to the
  // last partially overlapped frame.
  const auto b = synthesize(m, 20, 7);
  for (std::size_t i = 0; i < 19 * 256; ++i) REQUIRE(b.samples[i] == a.samples[i]);

  const auto silent = synthesize(model_with(std::vector<double>(257, 0.0)), 10, 7);
  for (double x : silent.samples) REQUIRE(x == 0.0);

  CHECK_THROWS_AS(synthesize(m, 0, 7), InvalidArgument);
  CHECK_THROWS_AS(synthesize(model_with(std::vector<double>(100, 1.0)), 10, 7),
                  InvalidArgument);
}

TEST_CASE("synthesize is homogeneous in the envelope") {
  auto m = model_with(raised_cosine_envelope(257));
  const auto a = synthesize(m, 40, 3);
  for (double& e : m.envelope) e *= 17.0;
  const auto b = synthesize(m, 40, 3);
  double peak = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    peak = std::max(peak, std::abs(b.samples[i]));
    worst = std::max(worst, std::abs(b.samples[i] - 17.0 * a.samples[i]));
  }
  CHECK(worst <= 1e-12 * peak);
}

TEST_CASE("round trip: flat envelope analyses back to consistent Rayleigh CV") {
  const auto m = model_with(std::vector<double>(257, 1.0));
  const auto signal = synthesize(m, 4000, 11);
  const auto stats = estimate_bin_statistics(stft_magnitudes(signal, StftConfig{}));
  const auto report = fit_consistent_cv(stats, BinRange::interior(257));
  CHECK(report.rho >= 0.99);
  CHECK(std::abs(report.c_s - oracle::sqrt_4_over_pi_minus_1()) <= 0.03);
  const double target = m.prototype.sigma0 / m.prototype.mu0;
  for (std::size_t k = 1; k < 256; ++k) {
    INFO("bin " << k);
    REQUIRE(std::abs(*stats.cv[k] - target) <= 0.03);
  }
}

TEST_CASE("round trip: shaped envelope is recovered up to a scale") {
  const auto env = raised_cosine_envelope(257);
  const auto m = model_with(env);
  const auto signal = synthesize(m, 20000, 21);
  const auto stats = estimate_bin_statistics(stft_magnitudes(signal, StftConfig{}));
  const auto interior = BinRange::interior(257);
  const auto report = fit_consistent_cv(stats, interior);
  CHECK(report.rho >= 0.99);
  CHECK(std::abs(report.c_s - oracle::sqrt_4_over_pi_minus_1()) <= 0.03);

  const double s = ls_scale(env, stats.mu, interior);
  double worst = 0.0;
  for (std::size_t k = interior.first; k <= interior.last; ++k) {
    worst = std::max(worst, std::abs(stats.mu[k] / (s * env[k]) - 1.0));
  }
  INFO("worst relative envelope error " << worst);
  CHECK(worst <= 0.10);
}
