#pragma once

#include <cstddef>
#include <functional>

namespace monospec {

// Worker count: hardware concurrency, capped by MONO_SPECTRAL_THREADS when set.
unsigned worker_count();

// Runs fn(i) for i in [0, n). The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace monospec
