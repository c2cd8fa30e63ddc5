// Copyright 2026 The augfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace augfid {

// Runs job(k) for k in [0, count) on up to `workers` threads.
template <typename Job>
void parallel_for(std::size_t count, int workers, Job job) {
    const std::size_t nthreads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
    if (nthreads <= 1) {
        for (std::size_t k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) {
                try {
                    job(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace augfid
