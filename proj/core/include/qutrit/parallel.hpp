// Copyright 2026 The Qutrit Control Authors
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

namespace qutrit {

/// Worker count from QUTRIT_NUM_THREADS if set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
size_t default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Each index is processed exactly once; results must be written to
/// per-index slots so output order never depends on scheduling. The first
/// exception thrown by any body is rethrown after all workers finish.
void parallel_for(size_t n, const std::function<void(size_t)> &body, size_t threads = 0);

}  // namespace qutrit
