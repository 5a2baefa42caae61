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

#ifndef AMPSTAT_HISTOGRAM_MODEL_HPP_
#define AMPSTAT_HISTOGRAM_MODEL_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "ampstat/bin_stats.hpp"
#include "ampstat/spectral.hpp"

namespace ampstat {

// Upper edge of the shared grid in normalized mode. A unit-mean amplitude
// with CV near 0.5 has negligible mass beyond it.
inline constexpr double kNormalizedGridMax = 5.0;
inline constexpr std::size_t kDefaultBuckets = 64;

// Uniform grid [0, grid_max] with n_buckets buckets.
std::vector<double> uniform_edges(std::size_t n_buckets, double grid_max);

struct BinHistogram {
  std::vector<double> edges;  // B + 1, strictly increasing
  std::vector<std::size_t> counts;
  std::vector<double> density;  // integrates to 1 over edges
  std::size_t bin_index = 0;
  bool normalized = false;
};

struct HistogramFamily {
  std::vector<double> edges;  // shared by every member
  std::vector<BinHistogram> members;
  std::vector<double> central;  // pointwise mean of member densities
  double dispersion = 0.0;      // mean pairwise L1 distance
  bool normalized = false;
  std::vector<std::size_t> excluded_bins;  // zero-mean columns (normalized)
  std::size_t overflow_count = 0;          // values beyond the grid
};

// Assembles a family from members sharing identical edges and fills in
// central and dispersion. Throws InvalidArgument on edge mismatch or an
// empty member list.
HistogramFamily make_family(std::vector<BinHistogram> members,
                            bool normalized);

// Histograms of each column in `bins`. In normalized mode every column is
// divided by its own sample mean first and the grid is [0, 5]; in raw mode
// the grid is [0, max amplitude over the included bins]. Values past the
// grid land in the last bucket and are counted in overflow_count.
HistogramFamily bin_histograms(const SpectrumSeries& series,
                               std::size_t n_buckets, bool normalized,
                               BinRange bins);

// integral of |p - q| over the shared grid.
double l1_distance(std::span<const double> edges, std::span<const double> p,
                   std::span<const double> q);

// Mean pairwise L1 distance between member densities. Requires >= 2 members.
double convergence_metric(const HistogramFamily& family);

// Piecewise-constant density on a grid with its midpoint moments.
struct PrototypeDistribution {
  std::vector<double> edges;
  std::vector<double> density;
  double mu0 = 0.0;
  double sigma0 = 0.0;

  double cv() const { return sigma0 / mu0; }

  // Renormalizes `density` to unit integral and computes mu0, sigma0 from
  // the bucket midpoints.
  static PrototypeDistribution from_density(std::vector<double> edges,
                                            std::vector<double> density);
};

// The central curve of a normalized family, renormalized to unit integral.
PrototypeDistribution estimate_prototype(const HistogramFamily& family);

// Unit-mean Rayleigh distribution binned exactly (CDF differences) onto a
// uniform [0, grid_max] grid. Reference prototype for white-noise spectra.
PrototypeDistribution rayleigh_prototype(
    std::size_t n_buckets = kDefaultBuckets,
    double grid_max = kNormalizedGridMax);

// Unit-mean Rayleigh pdf, x / s^2 exp(-x^2 / (2 s^2)) with s = sqrt(2 / pi).
double unit_mean_rayleigh_pdf(double x);

struct ScaledDensity {
  std::vector<double> edges;
  std::vector<double> density;
};

// Density of a = k * a0: p(a) = p0(a / k) / k on the grid k * edges.
ScaledDensity scale_density(const PrototypeDistribution& proto, double k);

// Moments of a piecewise-constant density evaluated at bucket midpoints.
double density_integral(std::span<const double> edges,
                        std::span<const double> density);
double density_mean(std::span<const double> edges,
                    std::span<const double> density);
double density_stddev(std::span<const double> edges,
                      std::span<const double> density);
double density_cv(std::span<const double> edges,
                  std::span<const double> density);

// CSV: first column bucket midpoints, one density column per member, then
// the central curve.
void write_csv(std::ostream& out, const HistogramFamily& family);

}  // namespace ampstat

#endif  // AMPSTAT_HISTOGRAM_MODEL_HPP_
