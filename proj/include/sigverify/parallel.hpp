#pragma once

#include <cstddef>
#include <functional>

namespace sigverify {

/// Worker count: SIGVERIFY_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Results must
/// be written to per-index slots. If any call throws, the exception from the
/// lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sigverify
