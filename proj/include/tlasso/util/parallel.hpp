#pragma once

#include <cstddef>
#include <functional>

namespace tlasso {

/// Worker cap: TLASSO_THREADS when set to a positive integer, else the hardware count.
std::size_t max_threads();

/// Runs body(0..count-1), spreading indices over up to max_threads() workers.
/// Calls made from inside a worker run serially. The first exception thrown by
/// any index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tlasso
