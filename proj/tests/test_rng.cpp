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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "covquant/rng.hpp"

using namespace covquant;

TEST_SUITE_BEGIN("rng");

TEST_CASE("same seed, same sequence; different substreams differ")
{
    RngStream a(42), b(42);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());

    RngStream s0 = RngStream(42).substream(0);
    RngStream s1 = RngStream(42).substream(1);
    int diff = 0;
    for (int i = 0; i < 64; ++i)
        diff += (s0.next_u64() != s1.next_u64());
    CHECK(diff > 60);
}

TEST_CASE("uniform01 stays in [0, 1); uniform_index stays in range")
{
    RngStream rng(1);
    for (int i = 0; i < 10000; ++i)
    {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.uniform_index(7) < 7);
    }
}

TEST_CASE("normal and complex-normal moments")
{
    RngStream rng(3);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));

    std::complex<double> mean(0.0);
    double power = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const std::complex<double> z = rng.complex_normal();
        mean += z;
        power += std::norm(z);
    }
    CHECK(std::abs(mean) / n < 0.02);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("qpsk symbols live on the unit-modulus constellation")
{
    RngStream rng(8);
    const double inv = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 1000; ++i)
    {
        const std::complex<double> s = rng.qpsk_symbol();
        CHECK(std::abs(std::abs(s.real()) - inv) < 1e-15);
        CHECK(std::abs(std::abs(s.imag()) - inv) < 1e-15);
    }
}

TEST_CASE("exponential mean")
{
    RngStream rng(5);
    double acc = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i)
        acc += rng.exponential(2.5);
    CHECK(acc / n == doctest::Approx(2.5).epsilon(0.02));
}

TEST_SUITE_END();
