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

#ifndef AMPSTAT_SERIALIZATION_HPP_
#define AMPSTAT_SERIALIZATION_HPP_

#include "json.hpp"

#include "ampstat/bin_stats.hpp"
#include "ampstat/histogram_model.hpp"
#include "ampstat/signal_io.hpp"
#include "ampstat/spectral.hpp"
#include "ampstat/synthesis.hpp"

namespace ampstat {

using nlohmann::json;

void to_json(json& j, const StftConfig& c);
void from_json(const json& j, StftConfig& c);

void to_json(json& j, const BinRange& r);
void from_json(const json& j, BinRange& r);

// Undefined cv entries serialize as null.
void to_json(json& j, const BinStatistics& s);
void from_json(const json& j, BinStatistics& s);

void to_json(json& j, const CvReport& r);
void from_json(const json& j, CvReport& r);

void to_json(json& j, const PrototypeDistribution& p);
// Recomputes mu0 and sigma0 from the stored grid.
void from_json(const json& j, PrototypeDistribution& p);

void to_json(json& j, const ScalingModel& m);
void from_json(const json& j, ScalingModel& m);

// Keys: kind, duration_s, seed, envelope (optional), frame_len, tone_hz,
// tone_amplitude, model (optional).
void to_json(json& j, const NoiseSpec& s);
void from_json(const json& j, NoiseSpec& s);

}  // namespace ampstat

#endif  // AMPSTAT_SERIALIZATION_HPP_
