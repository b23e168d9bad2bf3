#pragma once

#include <cstddef>
#include <functional>

namespace prcis {

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
/// handled by exactly one call, so writes to per-index slots need no locking.
/// workers == 0 means one thread per hardware core.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace prcis
