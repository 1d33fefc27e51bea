// Copyright 2026 The relent Authors
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

#pragma once

// Fan-out over a fixed set of work items with results collected by item
// index. Reductions over the collected results happen serially in index
// order, so outputs never depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace relent {

struct Parallelism {
  int threads = 1;  ///< 0 means std::thread::hardware_concurrency()

  unsigned resolved() const {
    if (threads > 0) return unsigned(threads);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }
};

/// results[i] = fn(i) for i in [0, n). Worker k takes items k, k + T, ...
/// The first exception thrown by any item is rethrown after all workers join.
template <typename T, typename Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn, Parallelism par = {}) {
  std::vector<T> results(n);
  const std::size_t workers = std::min<std::size_t>(par.resolved(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = k; i < n; i += workers) results[i] = fn(i);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// init + fn(0) + fn(1) + ... summed strictly left to right.
template <typename T, typename Fn>
T ordered_sum(std::size_t n, Fn&& fn, T init, Parallelism par = {}) {
  const std::vector<T> parts = map_indexed<T>(n, std::forward<Fn>(fn), par);
  for (const T& x : parts) init = init + x;
  return init;
}

}  // namespace relent
