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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ampstat/bin_stats.hpp"
#include "ampstat/cli_report.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/random.hpp"
#include "ampstat/signal_io.hpp"
#include "ampstat/spectral.hpp"
#include "ampstat/synthesis.hpp"
#include "ampstat/verify.hpp"

using namespace ampstat;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double rayleigh_cv_closed_form() { return std::sqrt(4.0 / std::numbers::pi - 1.0); }

std::vector<double> raised_cosine_envelope(std::size_t n_bins) {
  std::vector<double> env(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    env[k] = 2.5 - 1.5 * std::cos(std::numbers::pi * k / double(n_bins - 1));
  }
  return env;
}

SpectrumSeries white_series(double seconds, std::uint64_t seed) {
  NoiseSpec spec;
  spec.duration_s = seconds;
  spec.seed = seed;
  return stft_magnitudes(generate_noise(spec, 16000), StftConfig{});
}

// >= 20000 frames at hop 256.
const SpectrumSeries& shaped_series() {
  static const SpectrumSeries series = [] {
    NoiseSpec spec;
    spec.kind = NoiseKind::filtered_gaussian;
    spec.duration_s = 330.0;
    spec.seed = derive_seed(kSeed, streams::kNoise);
    spec.envelope = raised_cosine_envelope(257);
    return stft_magnitudes(generate_noise(spec, 16000), StftConfig{});
  }();
  return series;
}

double max_cv_deviation(const BinStatistics& stats, BinRange r, double target,
                        std::size_t* worst_bin) {
  double worst = 0.0;
  for (std::size_t k = r.first; k <= r.last; ++k) {
    const double d = stats.cv[k] ? std::abs(*stats.cv[k] - target) : INFINITY;
    if (d > worst) {
      worst = d;
      *worst_bin = k;
    }
  }
  return worst;
}

void rayleigh_cv(Outcome& o) {
  const double target = rayleigh_cv_closed_form();
  const auto start = std::chrono::steady_clock::now();
  for (auto [seconds, tol] : {std::pair{60.0, 0.02}, std::pair{600.0, 0.01}}) {
    const auto series = white_series(seconds, kSeed);
    const auto stats = estimate_bin_statistics(series);
    std::size_t bin = 0;
    const double dev =
        max_cv_deviation(stats, BinRange::interior(series.n_bins()), target, &bin);
    o.detail << seconds << "s: " << series.n_frames() << " frames, max |cv-"
             << target << "| = " << dev << " at bin " << bin << " (tol " << tol
             << "); ";
    o.require(dev <= tol, std::to_string(int(seconds)) + " s tolerance");
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.detail << "runtime " << elapsed << " s";
  o.require(elapsed <= 30.0, "runtime <= 30 s");
}

void shaped_rho(Outcome& o) {
  const auto& series = shaped_series();
  const auto stats = estimate_bin_statistics(series);
  const auto report = fit_consistent_cv(stats, BinRange::interior(series.n_bins()));
  o.detail << series.n_frames() << " frames, rho = " << report.rho
           << ", c_s = " << report.c_s << ", mu range "
           << *std::min_element(stats.mu.begin() + 1, stats.mu.end() - 1) << ".."
           << *std::max_element(stats.mu.begin() + 1, stats.mu.end() - 1);
  o.require(series.n_frames() >= 20000, ">= 20000 frames");
  o.require(report.rho >= 0.99, "rho >= 0.99");
}

PrototypeDistribution from_shape(std::size_t buckets, double support,
                                 const std::function<double(double)>& f) {
  const auto edges = uniform_edges(buckets, support);
  std::vector<double> d(buckets);
  for (std::size_t i = 0; i < buckets; ++i) d[i] = f(0.5 * (edges[i] + edges[i + 1]));
  return PrototypeDistribution::from_density(edges, d);
}

void scale_property(Outcome& o) {
  const std::vector<std::pair<std::string, PrototypeDistribution>> shapes{
      {"rayleigh", rayleigh_prototype()},
      {"uniform", from_shape(40, 2.0, [](double) { return 1.0; })},
      {"triangular", from_shape(60, 3.0, [](double x) { return 3.0 - x; })},
      {"exponential", from_shape(64, 5.0, [](double x) { return std::exp(-x); })},
      {"bimodal", from_shape(50, 2.5, [](double x) {
         return std::exp(-40 * (x - 0.5) * (x - 0.5)) + std::exp(-40 * (x - 1.6) * (x - 1.6));
       })}};
  double worst_cv = 0.0, worst_mean = 0.0;
  std::size_t failures = 0;
  for (const auto& [name, p] : shapes) {
    const double cv0 = density_cv(p.edges, p.density);
    for (double k : {0.1, 1.0, 3.7, 100.0}) {
      const auto s = scale_density(p, k);
      const double dcv = std::abs(density_cv(s.edges, s.density) - cv0);
      const double dmean =
          std::abs(density_mean(s.edges, s.density) - k * p.mu0) / (k * p.mu0);
      worst_cv = std::max(worst_cv, dcv);
      worst_mean = std::max(worst_mean, dmean);
      if (dcv > 1e-12 || dmean > 1e-12) ++failures;
    }
  }
  o.detail << shapes.size() << " shapes x 4 factors, max |dCV| = " << worst_cv
           << ", max relative mean error = " << worst_mean
           << ", failures = " << failures;
  o.require(failures == 0, "zero failures");
}

void histogram_convergence(Outcome& o) {
  const auto& series = shaped_series();
  const auto interior = BinRange::interior(series.n_bins());
  const auto raw = bin_histograms(series, kDefaultBuckets, false, interior);
  const auto norm = bin_histograms(series, kDefaultBuckets, true, interior);
  std::vector<double> ref(norm.edges.size() - 1);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    ref[i] = unit_mean_rayleigh_pdf(0.5 * (norm.edges[i] + norm.edges[i + 1]));
  }
  double worst = 0.0;
  std::size_t worst_bin = 0;
  for (const auto& m : norm.members) {
    const double d = l1_distance(norm.edges, m.density, ref);
    if (d > worst) {
      worst = d;
      worst_bin = m.bin_index;
    }
  }
  o.detail << "raw " << raw.dispersion << ", normalized " << norm.dispersion
           << " (ratio " << norm.dispersion / raw.dispersion
           << "), worst L1 to Rayleigh " << worst << " at bin " << worst_bin;
  o.require(norm.dispersion < 0.5 * raw.dispersion, "normalized < 0.5 x raw");
  o.require(worst <= 0.15, "every member within L1 0.15");
}

void synthesis_round_trip(Outcome& o) {
  ScalingModel model;
  model.prototype = rayleigh_prototype();
  model.envelope = raised_cosine_envelope(257);
  const auto signal = synthesize(model, 20000, derive_seed(kSeed, streams::kSynthesis));
  const auto stats = estimate_bin_statistics(stft_magnitudes(signal, model.config));
  const auto interior = BinRange::interior(257);
  const auto report = fit_consistent_cv(stats, interior);

  const double target = model.prototype.cv();
  std::size_t cv_bin = 0;
  const double cv_dev = max_cv_deviation(stats, interior, target, &cv_bin);

  double num = 0.0, den = 0.0;
  for (std::size_t k = interior.first; k <= interior.last; ++k) {
    num += model.envelope[k] * stats.mu[k];
    den += model.envelope[k] * model.envelope[k];
  }
  const double scale = num / den;
  double env_err = 0.0;
  for (std::size_t k = interior.first; k <= interior.last; ++k) {
    env_err = std::max(env_err, std::abs(stats.mu[k] / (scale * model.envelope[k]) - 1.0));
  }
  o.detail << "rho = " << report.rho << ", max |cv-" << target << "| = " << cv_dev
           << " at bin " << cv_bin << ", max envelope error " << env_err * 100
           << "% (fitted scale " << scale << ")";
  o.require(report.rho >= 0.99, "rho >= 0.99");
  o.require(cv_dev <= 0.03, "cv within 0.03");
  o.require(env_err <= 0.10, "envelope within 10%");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double rel(double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::abs(b); }

void determinism(Outcome& o) {
  std::random_device rd;
  const fs::path root = fs::temp_directory_path() /
                        ("ampstat_acceptance_" + std::to_string(rd()));
  std::ostringstream log;
  std::size_t compared = 0, mismatched = 0;
  auto replay_matches = [&](const RunConfig& c, const std::string& tag) {
    RunConfig first = c;
    first.output_dir = root / "a" / tag;
    if (run(first, log).exit_code != 0) return false;
    RunConfig again = load_manifest(first.output_dir / "manifest.json");
    again.output_dir = root / "b" / tag;
    if (run(again, log).exit_code != 0) return false;
    for (const auto& e : fs::directory_iterator(first.output_dir)) {
      ++compared;
      if (slurp(e.path()) != slurp(again.output_dir / e.path().filename())) ++mismatched;
    }
    return true;
  };
  NoiseSpec shaped;
  shaped.kind = NoiseKind::filtered_gaussian;
  shaped.duration_s = 20.0;
  shaped.seed = derive_seed(kSeed, streams::kNoise);
  shaped.envelope = raised_cosine_envelope(257);
  RunConfig analyze;
  analyze.command = Command::analyze;
  analyze.noise = shaped;
  analyze.seed = kSeed;
  analyze.dump_series = true;
  RunConfig histogram = analyze;
  histogram.command = Command::histogram;
  histogram.dump_series = false;
  RunConfig synth;
  synth.command = Command::synth;
  synth.seed = kSeed;
  synth.frames = 500;
  synth.inputs = {(root / "a" / "histogram" / "scaling_model.json").string()};
  const bool ran = replay_matches(analyze, "analyze") &&
                   replay_matches(histogram, "histogram") &&
                   replay_matches(synth, "synth");
  std::error_code ec;
  fs::remove_all(root, ec);
  o.detail << "replayed files " << compared << ", mismatched " << mismatched;
  o.require(ran, "commands ran");
  o.require(compared > 0 && mismatched == 0, "bit-exact replay");

  const auto series = white_series(60.0, kSeed);
  const auto interior = BinRange::interior(series.n_bins());
  const auto s1 = estimate_bin_statistics(series);
  const auto s17 = estimate_bin_statistics(series.scaled(17.0));
  const auto r1 = fit_consistent_cv(s1, interior);
  const auto r17 = fit_consistent_cv(s17, interior);
  double worst_cv = 0.0;
  for (std::size_t k = 0; k < s1.n_bins(); ++k) {
    if (s1.cv[k] && s17.cv[k]) worst_cv = std::max(worst_cv, rel(*s17.cv[k], *s1.cv[k]));
  }
  const double worst =
      std::max({rel(r17.rho, r1.rho), rel(r17.c_s, r1.c_s), worst_cv});
  o.detail << "; lambda=17 relative changes: rho " << rel(r17.rho, r1.rho)
           << ", c_s " << rel(r17.c_s, r1.c_s) << ", cv " << worst_cv;
  o.require(worst < 1e-12, "scale invariance < 1e-12");
}

void hand_matrix(Outcome& o) {
  std::size_t checks = 0, failures = 0;
  double worst = 0.0;
  auto near = [&](double got, double want) {
    ++checks;
    const double d = std::abs(got - want);
    worst = std::max(worst, d);
    if (!(d <= 1e-12)) ++failures;
  };
  // Rows are frames, columns are bins.
  const std::vector<double> a{1, 2, 0,  //
                              2, 4, 0,  //
                              3, 6, 0,  //
                              4, 8, 4};
  const auto s = estimate_bin_statistics(a, 4, 3);
  const double r53 = std::sqrt(5.0 / 3.0);
  near(s.mu[0], 2.5), near(s.mu[1], 5.0), near(s.mu[2], 1.0);
  near(s.var[0], 5.0 / 3.0), near(s.var[1], 20.0 / 3.0), near(s.var[2], 4.0);
  near(s.sigma[0], r53), near(s.sigma[1], 2.0 * r53), near(s.sigma[2], 2.0);
  near(*s.cv[0], r53 / 2.5), near(*s.cv[1], r53 / 2.5), near(*s.cv[2], 2.0);
  const double cross = 12.5 * r53 + 2.0;  // sum sigma*mu
  const auto rep = fit_consistent_cv(s, BinRange{0, 2});
  near(rep.rho, cross / (std::sqrt(37.0 / 3.0) * std::sqrt(32.25)));
  near(rep.c_s, cross / 32.25);
  const double cvs[3] = {r53 / 2.5, r53 / 2.5, 2.0};
  const double m = (cvs[0] + cvs[1] + cvs[2]) / 3.0;
  near(rep.per_bin_cv_spread,
       std::sqrt(((cvs[0] - m) * (cvs[0] - m) * 2 + (cvs[2] - m) * (cvs[2] - m)) / 3.0));

  // Elementary cases.
  const auto constant = estimate_bin_statistics(std::vector<double>{3, 3, 3, 3}, 4, 1);
  near(constant.mu[0], 3.0), near(constant.var[0], 0.0), near(*constant.cv[0], 0.0);
  const auto two = estimate_bin_statistics(std::vector<double>{0, 2}, 2, 1);
  near(two.mu[0], 1.0), near(two.var[0], 2.0), near(two.sigma[0], std::sqrt(2.0));

  auto stats_of = [](std::vector<double> mu, std::vector<double> sigma) {
    BinStatistics b;
    b.n_frames = 2;
    b.mu = mu;
    b.sigma = sigma;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      b.var.push_back(sigma[k] * sigma[k]);
      b.cv.push_back(mu[k] != 0.0 ? std::optional<double>(sigma[k] / mu[k]) : std::nullopt);
    }
    return b;
  };
  const auto prop = stats_of({1, 2, 3, 7}, {0.3, 0.6, 0.3 * 3, 0.3 * 7});
  near(*correlation_mu_sigma(prop, BinRange{0, 3}), 1.0);
  near(*correlation_mu_sigma(stats_of({1, 0}, {0, 1}), BinRange{0, 1}), 0.0);
  const auto half = fit_consistent_cv(stats_of({2, 4, 8}, {1, 2, 4}), BinRange{0, 2});
  near(half.c_s, 0.5), near(half.per_bin_cv_spread, 0.0), near(half.rho, 1.0);
  near(fit_consistent_cv(stats_of({1, 2}, {1, 1}), BinRange{0, 1}).c_s, 0.6);

  const auto w = hamming_window(512);
  near(w[0], 0.08), near(w[511], 0.08);
  near(hamming_window(511)[255], 1.0);

  o.detail << checks << " hand values, max abs error " << worst << ", failures "
           << failures;
  o.require(failures == 0, "all within 1e-12");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*fn)(Outcome&);
  };
  const Criterion criteria[] = {
      {"white-noise cv matches the Rayleigh value", rayleigh_cv},
      {"shaped-noise mu-sigma correlation", shaped_rho},
      {"scaled density keeps CV and scales the mean", scale_property},
      {"normalized histograms converge to Rayleigh", histogram_convergence},
      {"synthesis round trip", synthesis_round_trip},
      {"replay determinism and amplitude scale invariance", determinism},
      {"hand-computed small instances", hand_matrix},
  };
  int failed = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.fn(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %d %s: %s\n", o.passed ? "PASS" : "FAIL", index, c.name,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
    ++index;
  }
  std::printf("%d/%d criteria passed\n", index - 1 - failed, index - 1);
  return failed == 0 ? 0 : 1;
}
