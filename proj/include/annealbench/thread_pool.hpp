#pragma once

#include <cstddef>
#include <functional>

namespace annealbench {

/// Number of worker threads used by parallel_for (default: hardware concurrency).
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Runs body(i) for i in [0, count). Work is distributed over a persistent
/// pool; nested calls from inside a worker run inline. Exceptions are
/// rethrown in the caller (the lowest index wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace annealbench
