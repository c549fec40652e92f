#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace larclab {

// Static chunking over [0, count). Each worker owns a contiguous range, so any
// reduction done per-chunk and merged in chunk order is independent of timing.
inline void parallel_chunks(uint64_t count, int threads,
                            const std::function<void(int chunk, uint64_t begin, uint64_t end)>& body) {
    threads = std::max(1, threads);
    if (threads == 1 || count < 2) {
        body(0, 0, count);
        return;
    }
    const uint64_t nchunks = std::min<uint64_t>(threads, count);
    const uint64_t per = count / nchunks;
    const uint64_t extra = count % nchunks;
    std::vector<std::thread> pool;
    uint64_t begin = 0;
    for (uint64_t c = 0; c < nchunks; ++c) {
        uint64_t len = per + (c < extra ? 1 : 0);
        uint64_t end = begin + len;
        pool.emplace_back([&body, c, begin, end] { body(static_cast<int>(c), begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace larclab
