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

#include "ampstat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ampstat/bin_stats.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/spectral.hpp"

namespace ampstat {

namespace {

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::vector<std::pair<std::string, PrototypeDistribution>> test_prototypes() {
  std::vector<std::pair<std::string, PrototypeDistribution>> out;
  out.emplace_back("rayleigh", rayleigh_prototype());
  out.emplace_back("uniform_0_2", PrototypeDistribution::from_density(
                                      uniform_edges(16, 2.0),
                                      std::vector<double>(16, 0.5)));
  {
    // Triangular on [0, 3], peak at 0 -> mean 1.
    const auto edges = uniform_edges(48, 3.0);
    std::vector<double> d(48);
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = 3.0 - 0.5 * (edges[i] + edges[i + 1]);
    }
    out.emplace_back("triangular_0_3",
                     PrototypeDistribution::from_density(edges, d));
  }
  {
    const auto edges = uniform_edges(64, 5.0);
    std::vector<double> d(64);
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = std::exp(-0.5 * (edges[i] + edges[i + 1]));
    }
    out.emplace_back("truncated_exponential",
                     PrototypeDistribution::from_density(edges, d));
  }
  return out;
}

CheckResult check_scale_density() {
  CheckResult r{"scale_density_cv_and_mean", true, ""};
  std::ostringstream detail;
  detail.precision(3);
  double worst_cv = 0.0, worst_mean = 0.0, worst_mass = 0.0;
  for (const auto& [name, proto] : test_prototypes()) {
    const double cv0 = density_cv(proto.edges, proto.density);
    for (double k : {0.1, 1.0, 3.7, 100.0}) {
      const ScaledDensity s = scale_density(proto, k);
      const double cv = density_cv(s.edges, s.density);
      const double mean = density_mean(s.edges, s.density);
      const double mass = density_integral(s.edges, s.density);
      const double e_cv = std::abs(cv - cv0);
      const double e_mean = rel_diff(mean, k * proto.mu0);
      const double e_mass = std::abs(mass - 1.0);
      worst_cv = std::max(worst_cv, e_cv);
      worst_mean = std::max(worst_mean, e_mean);
      worst_mass = std::max(worst_mass, e_mass);
      if (e_cv > 1e-12 || e_mean > 1e-12 || e_mass > 1e-9) {
        r.passed = false;
        detail << name << " k=" << k << " failed; ";
      }
    }
  }
  detail << std::scientific << "max |dCV|=" << worst_cv
         << " max rel dMean=" << worst_mean << " max |mass-1|=" << worst_mass;
  r.detail = detail.str();
  return r;
}

}  // namespace

std::vector<CheckResult> run_property_suite(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  results.push_back(check_scale_density());

  NoiseSpec corpus = options.corpus;
  corpus.frame_len = options.stft.frame_len;
  const Signal signal = generate_noise(corpus, options.stft.sample_rate_hz);
  const SpectrumSeries series = stft_magnitudes(signal, options.stft);
  const BinStatistics stats = estimate_bin_statistics(series);
  const BinRange interior = BinRange::interior(series.n_bins());
  const CvReport report = fit_consistent_cv(stats, interior);

  {
    constexpr double kLambda = 17.0;
    const BinStatistics scaled = estimate_bin_statistics(series.scaled(kLambda));
    const CvReport sr = fit_consistent_cv(scaled, interior);
    double worst = std::max({rel_diff(sr.rho, report.rho),
                             rel_diff(sr.c_s, report.c_s),
                             rel_diff(sr.per_bin_cv_spread,
                                      report.per_bin_cv_spread)});
    for (std::size_t k = interior.first; k <= interior.last; ++k) {
      worst = std::max(worst, rel_diff(*scaled.cv[k], *stats.cv[k]));
      worst = std::max(worst, rel_diff(scaled.mu[k], kLambda * stats.mu[k]));
      worst = std::max(worst,
                       rel_diff(scaled.sigma[k], kLambda * stats.sigma[k]));
    }
    std::ostringstream d;
    d << "lambda=17 max relative change " << std::scientific << worst;
    results.push_back({"amplitude_scale_invariance", worst < 1e-12, d.str()});
  }

  if (corpus.kind == NoiseKind::white_gaussian) {
    const double target = rayleigh_cv();
    double worst = 0.0;
    std::size_t worst_bin = interior.first;
    for (std::size_t k = interior.first; k <= interior.last; ++k) {
      const double e = stats.cv[k] ? std::abs(*stats.cv[k] - target) : 1.0;
      if (e > worst) {
        worst = e;
        worst_bin = k;
      }
    }
    std::ostringstream d;
    d << "max |cv - sqrt(4/pi-1)| = " << worst << " at bin " << worst_bin
      << " over " << series.n_frames() << " frames, tolerance "
      << options.rayleigh_tolerance;
    results.push_back(
        {"rayleigh_cv_oracle", worst <= options.rayleigh_tolerance, d.str()});

    std::ostringstream dc;
    dc << "c_s = " << report.c_s;
    results.push_back({"consistent_cv_fit",
                       std::abs(report.c_s - target) <=
                           options.rayleigh_tolerance,
                       dc.str()});

    const HistogramFamily family =
        bin_histograms(series, kDefaultBuckets, true, interior);
    std::vector<double> ref(family.edges.size() - 1);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ref[i] = unit_mean_rayleigh_pdf(0.5 * (family.edges[i] +
                                             family.edges[i + 1]));
    }
    double worst_l1 = 0.0;
    for (const auto& m : family.members) {
      worst_l1 = std::max(worst_l1, l1_distance(family.edges, m.density, ref));
    }
    std::ostringstream dh;
    dh << "max L1 to unit-mean Rayleigh = " << worst_l1;
    results.push_back(
        {"normalized_histograms_rayleigh", worst_l1 <= 0.15, dh.str()});
  }

  std::ostringstream dr;
  dr << "rho = " << report.rho;
  results.push_back({"mu_sigma_correlation", report.rho >= 0.99, dr.str()});
  return results;
}

}  // namespace ampstat
