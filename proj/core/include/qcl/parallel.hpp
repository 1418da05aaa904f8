// Copyright 2026 The qclab Authors.
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

#include <cstddef>
#include <functional>
#include <vector>

namespace qcl {

/// Worker count from QCL_THREADS, falling back to hardware concurrency.
/// Always at least 1.
unsigned thread_count();

/// Overrides QCL_THREADS for the current process; 0 restores the default.
void set_thread_count(unsigned threads);

/// Runs body(i) for every i in [0, count) on a fixed pool of workers.
///
/// Tasks are split into contiguous blocks, one per worker. The body must
/// only write to per-index storage; callers reduce sequentially afterwards,
/// which keeps results independent of the worker count. The first exception
/// thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Maps body over [0, count) in parallel and returns the results in index order.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, F&& body) {
    std::vector<T> out(count);
    parallel_for(count, [&](std::size_t i) { out[i] = body(i); });
    return out;
}

}  // namespace qcl
