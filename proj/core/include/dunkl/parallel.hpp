#pragma once

#include <cstddef>
#include <functional>

namespace dunkl {

/// Worker cap: DUNKL_LAB_WORKERS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
/// worker_count() threads. Each index is visited exactly once, so results
/// written per index are independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace dunkl
