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

#ifndef AMPSTAT_SIGNAL_HPP_
#define AMPSTAT_SIGNAL_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

namespace ampstat {

// Mono real-valued signal. Samples are nominally in [-1, 1].
struct Signal {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

inline double peak_amplitude(const Signal& signal) {
  double peak = 0.0;
  for (double x : signal.samples) peak = std::max(peak, std::abs(x));
  return peak;
}

}  // namespace ampstat

#endif  // AMPSTAT_SIGNAL_HPP_
