#pragma once

#include <cstddef>
#include <functional>

namespace wcsl::numeric {

// Process-wide cap on worker threads used by data-parallel loops. Zero or a
// negative value restores the default (hardware concurrency).
void set_thread_limit(int threads) noexcept;
int thread_limit() noexcept;

// Runs body(i) for i in [0, count). Iterations must be independent; the
// first exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wcsl::numeric
