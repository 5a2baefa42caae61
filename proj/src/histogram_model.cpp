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

#include "ampstat/histogram_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "ampstat/error.hpp"

namespace ampstat {

std::vector<double> uniform_edges(std::size_t n_buckets, double grid_max) {
  if (n_buckets == 0 || !(grid_max > 0.0) || !std::isfinite(grid_max)) {
    throw InvalidArgument("histogram grid needs buckets > 0 and max > 0");
  }
  std::vector<double> edges(n_buckets + 1);
  for (std::size_t i = 0; i <= n_buckets; ++i) {
    edges[i] = grid_max * static_cast<double>(i) /
               static_cast<double>(n_buckets);
  }
  return edges;
}

namespace {

std::vector<double> counts_to_density(const std::vector<std::size_t>& counts,
                                      std::span<const double> edges) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  std::vector<double> density(counts.size(), 0.0);
  if (total == 0) return density;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    density[i] = static_cast<double>(counts[i]) /
                 (static_cast<double>(total) * (edges[i + 1] - edges[i]));
  }
  return density;
}

double column_mean(const SpectrumSeries& series, std::size_t bin) {
  // Same extended-precision mean as the bin statistics.
  long double sum = 0.0L, comp = 0.0L;
  for (std::size_t f = 0; f < series.n_frames(); ++f) {
    const long double x = series.at(f, bin);
    const long double t = sum + x;
    comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return static_cast<double>((sum + comp) / series.n_frames());
}

}  // namespace

HistogramFamily make_family(std::vector<BinHistogram> members,
                            bool normalized) {
  if (members.empty()) throw InvalidArgument("histogram family is empty");
  HistogramFamily family;
  family.edges = members.front().edges;
  family.normalized = normalized;
  const std::size_t n_buckets = family.edges.size() - 1;
  for (const auto& m : members) {
    if (m.edges != family.edges) {
      throw InvalidArgument("family members must share identical edges");
    }
    if (m.density.size() != n_buckets) {
      throw InvalidArgument("member density length does not match edges");
    }
  }
  family.central.assign(n_buckets, 0.0);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < n_buckets; ++i) {
      family.central[i] += m.density[i];
    }
  }
  for (double& c : family.central) c /= static_cast<double>(members.size());
  family.members = std::move(members);
  family.dispersion =
      family.members.size() >= 2 ? convergence_metric(family) : 0.0;
  return family;
}

HistogramFamily bin_histograms(const SpectrumSeries& series,
                               std::size_t n_buckets, bool normalized,
                               BinRange bins) {
  if (n_buckets < 8) {
    throw InvalidArgument("need at least 8 histogram buckets");
  }
  if (series.n_frames() < 2) {
    throw InvalidArgument("histograms need at least 2 frames");
  }
  bins.check(series.n_bins());

  std::vector<double> means(series.n_bins(), 1.0);
  std::vector<std::size_t> excluded;
  double grid_max = kNormalizedGridMax;
  if (normalized) {
    for (std::size_t k = bins.first; k <= bins.last; ++k) {
      means[k] = column_mean(series, k);
      if (means[k] == 0.0) excluded.push_back(k);
    }
  } else {
    grid_max = 0.0;
    for (std::size_t f = 0; f < series.n_frames(); ++f) {
      for (std::size_t k = bins.first; k <= bins.last; ++k) {
        grid_max = std::max(grid_max, series.at(f, k));
      }
    }
    if (grid_max == 0.0) {
      throw InvalidArgument("all amplitudes in bins " + bins.to_string() +
                            " are zero; raw histogram grid is empty");
    }
  }
  const std::vector<double> edges = uniform_edges(n_buckets, grid_max);

  std::vector<BinHistogram> members;
  std::size_t overflow = 0;
  for (std::size_t k = bins.first; k <= bins.last; ++k) {
    if (normalized && means[k] == 0.0) continue;
    BinHistogram h;
    h.edges = edges;
    h.counts.assign(n_buckets, 0);
    h.bin_index = k;
    h.normalized = normalized;
    for (std::size_t f = 0; f < series.n_frames(); ++f) {
      const double x = normalized ? series.at(f, k) / means[k] : series.at(f, k);
      const double pos = x / grid_max * static_cast<double>(n_buckets);
      std::size_t bucket;
      if (pos >= static_cast<double>(n_buckets)) {
        bucket = n_buckets - 1;
        if (x > grid_max) ++overflow;
      } else {
        bucket = static_cast<std::size_t>(pos);
      }
      ++h.counts[bucket];
    }
    h.density = counts_to_density(h.counts, h.edges);
    members.push_back(std::move(h));
  }
  if (members.empty()) {
    throw InvalidArgument("every bin in " + bins.to_string() +
                          " has zero mean; nothing to histogram");
  }
  HistogramFamily family = make_family(std::move(members), normalized);
  family.excluded_bins = std::move(excluded);
  family.overflow_count = overflow;
  return family;
}

double l1_distance(std::span<const double> edges, std::span<const double> p,
                   std::span<const double> q) {
  if (p.size() != q.size() || edges.size() != p.size() + 1) {
    throw InvalidArgument("densities and edges disagree in length");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += std::abs(p[i] - q[i]) * (edges[i + 1] - edges[i]);
  }
  return d;
}

double convergence_metric(const HistogramFamily& family) {
  const auto& m = family.members;
  if (m.size() < 2) {
    throw InvalidArgument("convergence metric needs at least 2 members");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      total += l1_distance(family.edges, m[i].density, m[j].density);
    }
  }
  const double pairs = static_cast<double>(m.size()) *
                       static_cast<double>(m.size() - 1) / 2.0;
  return total / pairs;
}

double density_integral(std::span<const double> edges,
                        std::span<const double> density) {
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    s += density[i] * (edges[i + 1] - edges[i]);
  }
  return s;
}

double density_mean(std::span<const double> edges,
                    std::span<const double> density) {
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    s += mid * density[i] * (edges[i + 1] - edges[i]);
  }
  return s;
}

double density_stddev(std::span<const double> edges,
                      std::span<const double> density) {
  const double mean = density_mean(edges, density);
  double s = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double d = 0.5 * (edges[i] + edges[i + 1]) - mean;
    s += d * d * density[i] * (edges[i + 1] - edges[i]);
  }
  return std::sqrt(s);
}

double density_cv(std::span<const double> edges,
                  std::span<const double> density) {
  return density_stddev(edges, density) / density_mean(edges, density);
}

PrototypeDistribution PrototypeDistribution::from_density(
    std::vector<double> edges, std::vector<double> density) {
  if (edges.size() != density.size() + 1 || density.empty()) {
    throw InvalidArgument("prototype needs B + 1 edges for B densities");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) {
      throw InvalidArgument("prototype edges must be strictly increasing");
    }
  }
  for (double d : density) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InvalidArgument("prototype density must be finite and >= 0");
    }
  }
  const double mass = density_integral(edges, density);
  if (!(mass > 0.0)) throw InvalidArgument("prototype density has no mass");
  for (double& d : density) d /= mass;

  PrototypeDistribution p;
  p.mu0 = density_mean(edges, density);
  p.sigma0 = density_stddev(edges, density);
  p.edges = std::move(edges);
  p.density = std::move(density);
  return p;
}

PrototypeDistribution estimate_prototype(const HistogramFamily& family) {
  if (!family.normalized) {
    throw InvalidArgument("prototype estimation needs a normalized family");
  }
  if (family.members.empty()) throw InvalidArgument("empty family");
  std::vector<double> central(family.edges.size() - 1, 0.0);
  for (const auto& m : family.members) {
    for (std::size_t i = 0; i < central.size(); ++i) central[i] += m.density[i];
  }
  for (double& c : central) c /= static_cast<double>(family.members.size());
  return PrototypeDistribution::from_density(family.edges, std::move(central));
}

double unit_mean_rayleigh_pdf(double x) {
  if (x < 0.0) return 0.0;
  const double s2 = 2.0 / std::numbers::pi;
  return x / s2 * std::exp(-x * x / (2.0 * s2));
}

PrototypeDistribution rayleigh_prototype(std::size_t n_buckets,
                                         double grid_max) {
  std::vector<double> edges = uniform_edges(n_buckets, grid_max);
  const double s2 = 2.0 / std::numbers::pi;
  auto cdf = [&](double x) { return -std::expm1(-x * x / (2.0 * s2)); };
  std::vector<double> density(n_buckets);
  for (std::size_t i = 0; i < n_buckets; ++i) {
    density[i] = (cdf(edges[i + 1]) - cdf(edges[i])) / (edges[i + 1] - edges[i]);
  }
  return PrototypeDistribution::from_density(std::move(edges),
                                             std::move(density));
}

ScaledDensity scale_density(const PrototypeDistribution& proto, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidArgument("scale factor k must be positive");
  }
  ScaledDensity out;
  out.edges.reserve(proto.edges.size());
  for (double e : proto.edges) out.edges.push_back(k * e);
  out.density.reserve(proto.density.size());
  for (double d : proto.density) out.density.push_back(d / k);
  return out;
}

void write_csv(std::ostream& out, const HistogramFamily& family) {
  out.precision(17);
  out << "bucket_mid";
  for (const auto& m : family.members) out << ",bin_" << m.bin_index;
  out << ",central\n";
  for (std::size_t i = 0; i + 1 < family.edges.size(); ++i) {
    out << 0.5 * (family.edges[i] + family.edges[i + 1]);
    for (const auto& m : family.members) out << ',' << m.density[i];
    out << ',' << family.central[i] << '\n';
  }
}

}  // namespace ampstat
