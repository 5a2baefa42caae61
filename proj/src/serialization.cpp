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

#include "ampstat/serialization.hpp"

#include "ampstat/error.hpp"

namespace ampstat {

void to_json(json& j, const StftConfig& c) {
  j = json{{"frame_len", c.frame_len},
           {"hop", c.hop},
           {"window", to_string(c.window)},
           {"sample_rate_hz", c.sample_rate_hz}};
}

void from_json(const json& j, StftConfig& c) {
  c = StftConfig{};
  c.frame_len = j.value("frame_len", c.frame_len);
  c.hop = j.value("hop", c.hop);
  c.window = parse_window_kind(j.value("window", std::string("hamming")));
  c.sample_rate_hz = j.value("sample_rate_hz", c.sample_rate_hz);
  c.validate();
}

void to_json(json& j, const BinRange& r) { j = r.to_string(); }

void from_json(const json& j, BinRange& r) {
  r = BinRange::parse(j.get<std::string>());
}

void to_json(json& j, const BinStatistics& s) {
  json cv = json::array();
  for (const auto& c : s.cv) cv.push_back(c ? json(*c) : json(nullptr));
  j = json{{"n_frames", s.n_frames}, {"mu", s.mu},   {"var", s.var},
           {"sigma", s.sigma},       {"cv", cv}};
}

void from_json(const json& j, BinStatistics& s) {
  s.n_frames = j.at("n_frames").get<std::size_t>();
  s.mu = j.at("mu").get<std::vector<double>>();
  s.var = j.at("var").get<std::vector<double>>();
  s.sigma = j.at("sigma").get<std::vector<double>>();
  s.cv.clear();
  for (const auto& c : j.at("cv")) {
    s.cv.push_back(c.is_null() ? std::nullopt
                               : std::optional<double>(c.get<double>()));
  }
  if (s.var.size() != s.mu.size() || s.sigma.size() != s.mu.size() ||
      s.cv.size() != s.mu.size()) {
    throw FormatError("bin statistics arrays differ in length");
  }
}

void to_json(json& j, const CvReport& r) {
  j = json{{"rho", r.rho},
           {"c_s", r.c_s},
           {"per_bin_cv_spread", r.per_bin_cv_spread},
           {"included_bins", r.included_bins},
           {"n_frames", r.n_frames},
           {"zero_mean_bins", r.zero_mean_bins},
           {"cv_min", r.cv_min},
           {"cv_max", r.cv_max},
           {"pearson_rho",
            r.pearson_rho ? json(*r.pearson_rho) : json(nullptr)}};
}

void from_json(const json& j, CvReport& r) {
  r.rho = j.at("rho").get<double>();
  r.c_s = j.at("c_s").get<double>();
  r.per_bin_cv_spread = j.at("per_bin_cv_spread").get<double>();
  r.included_bins = j.at("included_bins").get<BinRange>();
  r.n_frames = j.at("n_frames").get<std::size_t>();
  r.zero_mean_bins = j.value("zero_mean_bins", std::size_t{0});
  r.cv_min = j.value("cv_min", 0.0);
  r.cv_max = j.value("cv_max", 0.0);
  const auto& p = j.contains("pearson_rho") ? j["pearson_rho"] : json();
  r.pearson_rho = p.is_null() ? std::nullopt
                              : std::optional<double>(p.get<double>());
}

void to_json(json& j, const PrototypeDistribution& p) {
  j = json{{"edges", p.edges},
           {"density", p.density},
           {"mu0", p.mu0},
           {"sigma0", p.sigma0}};
}

void from_json(const json& j, PrototypeDistribution& p) {
  p = PrototypeDistribution::from_density(
      j.at("edges").get<std::vector<double>>(),
      j.at("density").get<std::vector<double>>());
}

void to_json(json& j, const ScalingModel& m) {
  j = json{{"envelope", m.envelope},
           {"prototype", m.prototype},
           {"config", m.config}};
}

void from_json(const json& j, ScalingModel& m) {
  m.envelope = j.at("envelope").get<std::vector<double>>();
  m.prototype = j.at("prototype").get<PrototypeDistribution>();
  m.config = j.at("config").get<StftConfig>();
  m.validate();
}

void to_json(json& j, const NoiseSpec& s) {
  j = json{{"kind", to_string(s.kind)},
           {"duration_s", s.duration_s},
           {"seed", s.seed},
           {"envelope", s.envelope ? json(*s.envelope) : json(nullptr)},
           {"frame_len", s.frame_len}};
  if (s.kind == NoiseKind::constant_tone) {
    j["tone_hz"] = s.tone_hz;
    j["tone_amplitude"] = s.tone_amplitude;
  }
  if (s.model) j["model"] = *s.model;
}

void from_json(const json& j, NoiseSpec& s) {
  s = NoiseSpec{};
  s.kind = parse_noise_kind(j.at("kind").get<std::string>());
  s.duration_s = j.at("duration_s").get<double>();
  s.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("envelope") && !j["envelope"].is_null()) {
    s.envelope = j["envelope"].get<std::vector<double>>();
  }
  s.frame_len = j.value("frame_len", s.frame_len);
  s.tone_hz = j.value("tone_hz", s.tone_hz);
  s.tone_amplitude = j.value("tone_amplitude", s.tone_amplitude);
  if (j.contains("model") && !j["model"].is_null()) {
    s.model = j["model"].get<ScalingModel>();
  }
}

}  // namespace ampstat
