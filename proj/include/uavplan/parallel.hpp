#pragma once

#include <functional>

namespace uavplan {

// Runs fn(i) for i in [0, n). Items must write to disjoint state so the
// result is identical for any worker count. workers <= 1 runs inline.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

// Worker-count default: UAVPLAN_WORKERS env var if set, else hardware
// concurrency, else 1.
int default_workers();

}  // namespace uavplan
