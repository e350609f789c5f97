#include "lapden/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <vector>

namespace lapden {

std::size_t thread_limit() {
    const char* env = std::getenv("LAPDEN_THREADS");
    if (env == nullptr) return 1;
    std::size_t n = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec != std::errc{} || ptr != end || n == 0) return 1;
    return std::min<std::size_t>(n, 256);
}

void parallel_for_rows(std::size_t count, std::size_t min_rows_per_thread,
                       const std::function<void(std::size_t, std::size_t)>& body) {
    const std::size_t grain = std::max<std::size_t>(min_rows_per_thread, 1);
    const std::size_t workers = std::min(thread_limit(), std::max<std::size_t>(count / grain, 1));
    if (workers <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        if (begin < end) pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(0, std::min(count, chunk));
}

}  // namespace lapden
