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

#ifndef AMPSTAT_VERIFY_HPP_
#define AMPSTAT_VERIFY_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "ampstat/signal_io.hpp"

namespace ampstat {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  // Corpus for the Rayleigh and scale-invariance checks.
  NoiseSpec corpus = [] {
    NoiseSpec s;
    s.duration_s = 60.0;
    return s;
  }();
  StftConfig stft;
  double rayleigh_tolerance = 0.02;
};

// Scale-density CV and mean identities on several prototypes, amplitude
// scale invariance of the bin statistics, the Rayleigh CV oracle on white
// noise and the mu-sigma correlation on the same corpus.
std::vector<CheckResult> run_property_suite(const VerifyOptions& options);

// sqrt(4 / pi - 1), the CV of any Rayleigh distribution.
inline double rayleigh_cv() { return std::sqrt(4.0 / std::numbers::pi - 1.0); }

}  // namespace ampstat

#endif  // AMPSTAT_VERIFY_HPP_
