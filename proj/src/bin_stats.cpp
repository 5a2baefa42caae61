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

#include "ampstat/bin_stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ampstat/error.hpp"

namespace ampstat {

namespace {

// Neumaier-compensated accumulator in extended precision.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

}  // namespace

BinRange BinRange::interior(std::size_t n_bins) {
  if (n_bins < 3) throw InvalidArgument("no interior bins when n_bins < 3");
  return {1, n_bins - 2};
}

BinRange BinRange::all(std::size_t n_bins) {
  if (n_bins == 0) throw InvalidArgument("empty spectrum");
  return {0, n_bins - 1};
}

void BinRange::check(std::size_t n_bins) const {
  if (first > last || last >= n_bins) {
    throw InvalidArgument("bin range " + to_string() +
                          " is empty or outside 0.." +
                          std::to_string(n_bins == 0 ? 0 : n_bins - 1));
  }
}

std::string BinRange::to_string() const {
  return std::to_string(first) + ".." + std::to_string(last);
}

BinRange BinRange::parse(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    throw InvalidArgument("bin range '" + text + "' must look like lo..hi");
  }
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, sep);
    const std::string hi = text.substr(sep + 2);
    BinRange r;
    r.first = std::stoul(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    r.last = std::stoul(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    if (r.first > r.last) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw InvalidArgument("bin range '" + text + "' must look like lo..hi");
  }
}

BinStatistics estimate_bin_statistics(std::span<const double> amplitudes,
                                      std::size_t n_frames,
                                      std::size_t n_bins) {
  if (n_frames < 2) {
    throw InvalidArgument("bin statistics need at least 2 frames, got " +
                          std::to_string(n_frames));
  }
  if (amplitudes.size() != n_frames * n_bins) {
    throw InvalidArgument("amplitude matrix size mismatch");
  }

  std::vector<CompensatedSum> sums(n_bins);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* row = amplitudes.data() + f * n_bins;
    for (std::size_t k = 0; k < n_bins; ++k) sums[k].add(row[k]);
  }
  std::vector<long double> means(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    means[k] = sums[k].value() / static_cast<long double>(n_frames);
  }

  std::vector<CompensatedSum> squares(n_bins);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* row = amplitudes.data() + f * n_bins;
    for (std::size_t k = 0; k < n_bins; ++k) {
      const long double d = row[k] - means[k];
      squares[k].add(d * d);
    }
  }

  BinStatistics stats;
  stats.n_frames = n_frames;
  stats.mu.resize(n_bins);
  stats.var.resize(n_bins);
  stats.sigma.resize(n_bins);
  stats.cv.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    stats.mu[k] = static_cast<double>(means[k]);
    const long double var =
        squares[k].value() / static_cast<long double>(n_frames - 1);
    stats.var[k] = static_cast<double>(var);
    stats.sigma[k] = std::sqrt(stats.var[k]);
    if (stats.mu[k] != 0.0) stats.cv[k] = stats.sigma[k] / stats.mu[k];
  }
  return stats;
}

BinStatistics estimate_bin_statistics(const SpectrumSeries& series) {
  return estimate_bin_statistics(series.amplitudes(), series.n_frames(),
                                 series.n_bins());
}

std::optional<double> correlation_mu_sigma(const BinStatistics& stats,
                                           BinRange bins) {
  bins.check(stats.n_bins());
  CompensatedSum cross, ss, mm;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    const long double s = stats.sigma[k];
    const long double m = stats.mu[k];
    cross.add(s * m);
    ss.add(s * s);
    mm.add(m * m);
  }
  if (ss.value() == 0.0L || mm.value() == 0.0L) return std::nullopt;
  const long double rho =
      cross.value() / (std::sqrt(ss.value()) * std::sqrt(mm.value()));
  return static_cast<double>(std::min(rho, 1.0L));
}

std::optional<double> pearson_mu_sigma(const BinStatistics& stats,
                                       BinRange bins) {
  bins.check(stats.n_bins());
  CompensatedSum sum_s, sum_m;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    sum_s.add(stats.sigma[k]);
    sum_m.add(stats.mu[k]);
  }
  const long double n = static_cast<long double>(bins.size());
  const long double mean_s = sum_s.value() / n;
  const long double mean_m = sum_m.value() / n;
  CompensatedSum cross, ss, mm;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    const long double s = stats.sigma[k] - mean_s;
    const long double m = stats.mu[k] - mean_m;
    cross.add(s * m);
    ss.add(s * s);
    mm.add(m * m);
  }
  if (ss.value() == 0.0L || mm.value() == 0.0L) return std::nullopt;
  return static_cast<double>(cross.value() /
                             (std::sqrt(ss.value()) * std::sqrt(mm.value())));
}

CvReport fit_consistent_cv(const BinStatistics& stats, BinRange bins) {
  const auto rho = correlation_mu_sigma(stats, bins);
  if (!rho) {
    throw InvalidArgument("mu or sigma is identically zero over bins " +
                          bins.to_string());
  }

  CvReport report;
  report.rho = *rho;
  report.included_bins = bins;
  report.n_frames = stats.n_frames;
  report.pearson_rho = pearson_mu_sigma(stats, bins);

  CompensatedSum cross, mm;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    cross.add(static_cast<long double>(stats.sigma[k]) * stats.mu[k]);
    mm.add(static_cast<long double>(stats.mu[k]) * stats.mu[k]);
  }
  report.c_s = static_cast<double>(cross.value() / mm.value());

  CompensatedSum cv_sum;
  std::size_t n_defined = 0;
  report.cv_min = std::numeric_limits<double>::infinity();
  report.cv_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    if (!stats.cv[k]) {
      ++report.zero_mean_bins;
      continue;
    }
    cv_sum.add(*stats.cv[k]);
    report.cv_min = std::min(report.cv_min, *stats.cv[k]);
    report.cv_max = std::max(report.cv_max, *stats.cv[k]);
    ++n_defined;
  }
  // n_defined > 0 here: a nonzero mu exists or rho would be undefined.
  const long double cv_mean = cv_sum.value() / n_defined;
  CompensatedSum dev;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    if (!stats.cv[k]) continue;
    const long double d = *stats.cv[k] - cv_mean;
    dev.add(d * d);
  }
  report.per_bin_cv_spread =
      static_cast<double>(std::sqrt(dev.value() / n_defined));
  return report;
}

void write_csv(std::ostream& out, const BinStatistics& stats,
               std::span<const double> bin_freqs_hz) {
  if (bin_freqs_hz.size() != stats.n_bins()) {
    throw InvalidArgument("bin frequency count does not match statistics");
  }
  out.precision(17);
  out << "bin,bin_freq_hz,mu,sigma,cv\n";
  for (std::size_t k = 0; k < stats.n_bins(); ++k) {
    out << k << ',' << bin_freqs_hz[k] << ',' << stats.mu[k] << ','
        << stats.sigma[k] << ',';
    if (stats.cv[k]) out << *stats.cv[k];
    out << '\n';
  }
}

}  // namespace ampstat
