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

#ifndef COVQUANT_PARALLEL_H
#define COVQUANT_PARALLEL_H

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace covquant
{

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
// written into index-addressed slots by the caller, which keeps reductions
// deterministic regardless of the worker count. The first exception thrown by
// any task is rethrown after all threads join.
template <typename Fn> void parallel_for_indexed(std::size_t count, std::size_t jobs, Fn &&fn)
{
    if (count == 0)
        return;
    if (jobs <= 1 || count == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    jobs = std::min(jobs, count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::size_t next = 0;
    std::mutex next_mutex;

    for (std::size_t t = 0; t < jobs; ++t)
    {
        pool.emplace_back([&]() {
            while (true)
            {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= count)
                        return;
                    i = next++;
                }
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread &th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace covquant

#endif
