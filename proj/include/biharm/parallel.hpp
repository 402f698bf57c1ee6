// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace biharm
{

// Worker cap. Defaults to BIHARM_THREADS when set, else the hardware concurrency.
int worker_count();
void set_worker_count(int n);

// Calls body(begin, end) on contiguous blocks of [0, n). The partition depends only on n
// and the worker count, and every index is written by exactly one block, so results do
// not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace biharm
