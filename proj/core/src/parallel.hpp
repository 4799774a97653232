// Copyright 2026 The Authors.
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

#ifndef SUBSEL_SRC_PARALLEL_HPP_
#define SUBSEL_SRC_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subsel::internal {

// Runs body(i) for i in [0, count) over contiguous blocks, one per worker.
// Each index is visited exactly once, so writes to slot i are race-free and
// the result does not depend on the thread count. The first exception is
// rethrown on the calling thread.
template <typename Body>
void parallel_for(std::uint64_t count, Body&& body,
                  std::uint64_t min_per_thread = 256) {
  const std::uint64_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers =
      std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, count / min_per_thread));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t block = (count + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * block;
    const std::uint64_t hi = std::min(count, lo + block);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace subsel::internal

#endif  // SUBSEL_SRC_PARALLEL_HPP_
