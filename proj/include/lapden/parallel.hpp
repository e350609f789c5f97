#pragma once

#include <cstddef>
#include <functional>

namespace lapden {

/// Worker cap from LAPDEN_THREADS (unset or invalid means 1).
std::size_t thread_limit();

/// Runs body(begin, end) over [0, count) split into contiguous chunks. Each index is
/// processed by exactly one call, so per-index results do not depend on the split.
void parallel_for_rows(std::size_t count, std::size_t min_rows_per_thread,
                       const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lapden
