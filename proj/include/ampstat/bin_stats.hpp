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

#ifndef AMPSTAT_BIN_STATS_HPP_
#define AMPSTAT_BIN_STATS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ampstat/spectral.hpp"

namespace ampstat {

// Inclusive range of bin indices [first, last].
struct BinRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t k) const { return k >= first && k <= last; }

  // Bins 1 .. n_bins - 2: everything except DC and Nyquist.
  static BinRange interior(std::size_t n_bins);
  static BinRange all(std::size_t n_bins);

  // Throws InvalidArgument if first > last or last >= n_bins.
  void check(std::size_t n_bins) const;

  // "lo..hi"
  std::string to_string() const;
  static BinRange parse(const std::string& text);

  bool operator==(const BinRange&) const = default;
};

struct BinStatistics {
  std::vector<double> mu;
  std::vector<double> var;  // unbiased, divisor n_frames - 1
  std::vector<double> sigma;
  std::vector<std::optional<double>> cv;  // empty where mu == 0
  std::size_t n_frames = 0;

  std::size_t n_bins() const { return mu.size(); }
};

struct CvReport {
  double rho = 0.0;  // uncentered mu-sigma correlation
  double c_s = 0.0;  // least-squares sigma/mu proportionality coefficient
  double per_bin_cv_spread = 0.0;
  BinRange included_bins;
  std::size_t n_frames = 0;
  std::size_t zero_mean_bins = 0;  // bins in range with mu == 0
  double cv_min = 0.0;
  double cv_max = 0.0;
  std::optional<double> pearson_rho;  // mean-centered diagnostic
};

// Per-column mean and unbiased variance of a row-major
// [n_frames x n_bins] amplitude matrix. Columns are accumulated in frame
// order with compensated extended-precision sums. Requires n_frames >= 2.
BinStatistics estimate_bin_statistics(std::span<const double> amplitudes,
                                      std::size_t n_frames,
                                      std::size_t n_bins);
BinStatistics estimate_bin_statistics(const SpectrumSeries& series);

// sum(sigma*mu) / (sqrt(sum sigma^2) * sqrt(sum mu^2)) over `bins`, without
// mean removal. Empty when sigma or mu is identically zero on the range.
std::optional<double> correlation_mu_sigma(const BinStatistics& stats,
                                           BinRange bins);

// Mean-centered Pearson correlation of sigma against mu. Diagnostic only.
std::optional<double> pearson_mu_sigma(const BinStatistics& stats,
                                       BinRange bins);

// c_s = sum(sigma*mu) / sum(mu^2), the minimizer of sum (sigma - c mu)^2.
// The spread is the population standard deviation of the defined cv values
// in range. Throws InvalidArgument when the correlation is undefined.
CvReport fit_consistent_cv(const BinStatistics& stats, BinRange bins);

// CSV with columns bin,bin_freq_hz,mu,sigma,cv (cv blank where undefined).
void write_csv(std::ostream& out, const BinStatistics& stats,
               std::span<const double> bin_freqs_hz);

}  // namespace ampstat

#endif  // AMPSTAT_BIN_STATS_HPP_
