#pragma once

#include <cstddef>
#include <functional>

namespace lpf {

// Worker count from PSIF_THREADS, else the hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n) on thread_count() workers. Each index writes its
// own slot, so results do not depend on scheduling. The first exception thrown
// (lowest index) is rethrown after all workers join. Calls made from inside a
// worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lpf
