#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace symsq {

struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double value) {
        const double y = value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Runs fn(block_index) for blocks 0..nblocks-1 on the given number of threads.
// Blocks are pulled from a shared counter; the caller owns any merge order, so
// results are deterministic as long as each block writes only its own slot.
template <typename Fn>
void run_blocks(std::size_t nblocks, int threads, Fn&& fn) {
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace symsq
