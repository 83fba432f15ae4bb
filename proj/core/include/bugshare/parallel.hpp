// Copyright 2026 The bugshare Authors
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

#ifndef BUGSHARE_PARALLEL_HPP_
#define BUGSHARE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace bugshare {

// Hardware concurrency, capped by the BUGSHARE_THREADS environment variable
// when it holds a positive integer. Never less than 1.
std::size_t worker_count();

// Runs body(0) .. body(count - 1) across `workers` threads (worker_count()
// when 0). Callers write into per-index slots, so results do not depend on
// the thread count. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace bugshare

#endif  // BUGSHARE_PARALLEL_HPP_
