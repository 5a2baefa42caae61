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

#ifndef AMPSTAT_FFT_HPP_
#define AMPSTAT_FFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ampstat {

bool is_power_of_two(std::size_t n);

// In-place iterative radix-2 complex FFT of a fixed power-of-two size.
// Forward: X[k] = sum_n x[n] exp(-2 pi i k n / N).
// Inverse includes the 1/N factor.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data, bool inverse) const;

  std::size_t n_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2 pi i k / N), k < N/2
  std::vector<std::size_t> bit_reverse_;
};

}  // namespace ampstat

#endif  // AMPSTAT_FFT_HPP_
