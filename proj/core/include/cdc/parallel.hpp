// Copyright 2026 The cdc-pda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CDC_PARALLEL_HPP_
#define CDC_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace cdc {

// Environment variable read by default_thread_count().
inline constexpr const char* kThreadsEnvVar = "CDC_THREADS";

// Worker count from CDC_THREADS, falling back to the hardware concurrency.
std::size_t default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers.
//
// Indices are handed out dynamically; callers write results into
// index-addressed slots so output never depends on completion order. The
// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace cdc

#endif  // CDC_PARALLEL_HPP_
