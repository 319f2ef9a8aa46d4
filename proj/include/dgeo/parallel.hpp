#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace dgeo {

// Static-chunked parallel loop. fn(begin, end) is invoked on half-open index
// ranges; every index lands in exactly one range. Each index's work must
// write only its own output slots, which keeps results identical for every
// worker count. Falls back to a plain loop for small counts or threads <= 1.
template <typename Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn, std::int64_t grain = 1024) {
    if (count <= 0) return;
    const std::int64_t chunks = (count + grain - 1) / grain;
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, chunks));
    if (workers <= 1) {
        fn(std::int64_t{0}, count);
        return;
    }
    std::atomic<std::int64_t> next_chunk{0};
    auto body = [&] {
        for (;;) {
            std::int64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) return;
            std::int64_t begin = c * grain;
            std::int64_t end = std::min(begin + grain, count);
            fn(begin, end);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

}  // namespace dgeo
