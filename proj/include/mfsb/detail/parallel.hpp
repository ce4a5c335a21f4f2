#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mfsb::detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MFSB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Splits [0, count) into fixed-size chunks and reduces them in chunk order.
// The chunking is independent of the thread count, so results are bitwise
// identical no matter how the work is distributed.
//
//   make(chunk_begin, chunk_end) -> Acc
//   merge(Acc& total, Acc&& part)   called sequentially, ascending chunks
template <typename Acc, typename Make, typename Merge>
Acc chunked_reduce(std::uint64_t count, std::uint64_t chunk_size, unsigned threads,
                   Make make, Merge merge, Acc init) {
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t n_chunks = (count + chunk_size - 1) / chunk_size;
    const unsigned nt = std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_chunks, 1));
    std::vector<Acc> parts(n_chunks, init);
    if (nt <= 1 || n_chunks <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) {
            const std::uint64_t lo = c * chunk_size;
            const std::uint64_t hi = std::min(count, lo + chunk_size);
            parts[c] = make(lo, hi);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        std::atomic<std::uint64_t> next{0};
        for (unsigned t = 0; t < nt; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const std::uint64_t c = next.fetch_add(1);
                    if (c >= n_chunks) break;
                    const std::uint64_t lo = c * chunk_size;
                    const std::uint64_t hi = std::min(count, lo + chunk_size);
                    parts[c] = make(lo, hi);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    Acc total = std::move(init);
    for (auto& p : parts) merge(total, std::move(p));
    return total;
}

// Index-parallel for loop; iteration order inside a worker is ascending and
// output slots are per-index, so the result does not depend on scheduling.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned threads, Fn fn) {
    const unsigned nt = std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(count, 1));
    if (nt <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace mfsb::detail
