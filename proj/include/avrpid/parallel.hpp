#pragma once

#include <cstddef>
#include <functional>

namespace avrpid {

/// Worker cap from AVRPID_THREADS (0 or unset = hardware concurrency).
std::size_t thread_cap();

/// Runs body(0..n-1) on up to thread_cap() workers with strided assignment.
/// Callers index into preallocated output, so results are order-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace avrpid
