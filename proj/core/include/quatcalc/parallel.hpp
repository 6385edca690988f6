#pragma once

#include <cstddef>
#include <functional>

namespace quatcalc {

/// Worker count: QUATCALC_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
/// is visited exactly once; callers write results into per-index slots and
/// reduce afterwards in index order, so results never depend on scheduling.
/// If bodies throw, the exception from the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace quatcalc
