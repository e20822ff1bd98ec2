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

#include "covquant/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace covquant
{

namespace
{

constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z)
{
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : key_(mix64(seed + GOLDEN)) {}

RngStream RngStream::substream(std::uint64_t id) const
{
    RngStream child;
    child.key_ = mix64(key_ ^ mix64(id + 0x5851F42D4C957F2DULL));
    return child;
}

std::uint64_t RngStream::next_u64()
{
    ++counter_;
    return mix64(key_ + counter_ * GOLDEN);
}

double RngStream::uniform01()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform01();
}

std::uint64_t RngStream::uniform_index(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_index: n must be positive.");
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double RngStream::exponential(double mean)
{
    if (mean < 0.0)
        throw std::invalid_argument("exponential: mean must be nonnegative.");
    return -mean * std::log(1.0 - uniform01());
}

double RngStream::normal()
{
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::complex<double> RngStream::complex_normal()
{
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

std::complex<double> RngStream::qpsk_symbol()
{
    const std::uint64_t bits = next_u64();
    const double inv = 1.0 / std::sqrt(2.0);
    return {(bits & 1) ? inv : -inv, (bits & 2) ? inv : -inv};
}

} // namespace covquant
