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

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's numerical code paths.

#ifndef AMPSTAT_TESTS_ORACLES_HPP_
#define AMPSTAT_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// O(N^2) DFT, X[k] = sum_n x[n] exp(-2 pi i k n / N).
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double a = -2.0 * std::numbers::pi *
                       static_cast<double>((k * t) % n) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

struct Moments {
  double mean;
  double var;  // unbiased
};

// Plain two-pass double-precision mean and unbiased variance.
inline Moments naive_moments(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  const double m = s / static_cast<double>(x.size());
  double q = 0.0;
  for (double v : x) q += (v - m) * (v - m);
  return {m, q / static_cast<double>(x.size() - 1)};
}

// Magnitudes of complex values with i.i.d. N(0, 1) parts. Uses the standard
// library distributions, not the library's generator.
inline std::vector<double> rayleigh_draws(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> out(n);
  for (double& v : out) {
    const double re = normal(engine);
    const double im = normal(engine);
    v = std::hypot(re, im);
  }
  return out;
}

inline double cv_of(const std::vector<double>& x) {
  const Moments m = naive_moments(x);
  return std::sqrt(m.var) / m.mean;
}

// Histogram density of x on a uniform [0, hi] grid (values past hi dropped
// from the counts but kept in the normalizer).
inline std::vector<double> direct_histogram(const std::vector<double>& x,
                                            std::size_t buckets, double hi) {
  std::vector<double> d(buckets, 0.0);
  const double w = hi / static_cast<double>(buckets);
  for (double v : x) {
    const auto i = static_cast<std::size_t>(v / w);
    if (i < buckets) d[i] += 1.0;
  }
  for (double& v : d) v /= static_cast<double>(x.size()) * w;
  return d;
}

// Unit-mean Rayleigh pdf written out from scratch: scale s with
// s * sqrt(pi / 2) = 1.
inline double rayleigh_unit_mean_pdf(double x) {
  const double s = 1.0 / std::sqrt(std::numbers::pi / 2.0);
  return x / (s * s) * std::exp(-(x * x) / (2.0 * s * s));
}

inline double sqrt_4_over_pi_minus_1() {
  return std::sqrt(4.0 / std::numbers::pi - 1.0);
}

}  // namespace oracle

#endif  // AMPSTAT_TESTS_ORACLES_HPP_
