// SPDX-License-Identifier: Apache-2.0
//
// covquant - spatial covariance quantization for massive MIMO cascaded precoding
// Copyright (C) 2026 The covquant authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COVQUANT_RNG_H
#define COVQUANT_RNG_H

#include <complex>
#include <cstdint>

namespace covquant
{

// Counter-based stream generator (SplitMix64 core). Substreams are derived by
// key mixing, so any (seed, substream path) pair names the same sequence no
// matter how many threads are running or in which order streams are consumed.
// Distribution sampling is implemented here rather than with <random> because
// the standard distributions are implementation-defined and would break
// bit-reproducible output.
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed);

    // Independent child stream; derive(i) != derive(j) for i != j.
    RngStream substream(std::uint64_t id) const;

    std::uint64_t next_u64();
    double uniform01(); // [0, 1)
    double uniform(double lo, double hi);
    std::uint64_t uniform_index(std::uint64_t n); // [0, n)
    double exponential(double mean);
    double normal();                        // N(0, 1)
    std::complex<double> complex_normal();  // circular CN(0, 1)
    std::complex<double> qpsk_symbol();     // (+-1 +-j)/sqrt(2)

  private:
    RngStream() = default;
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace covquant

#endif
