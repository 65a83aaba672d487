#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zerocorr {

// Resolve a worker count: explicit request > ZEROCORR_WORKERS env > hardware.
inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ZEROCORR_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Process [0, total) in fixed-size chunks and return one accumulator per
// chunk, in chunk order.  Workers race only for chunk indices; each chunk is
// computed sequentially, so the set of per-chunk results is independent of
// the worker count.  Callers fold the returned vector in order, which keeps
// the final reduction bit-identical for any number of threads.
template <class Acc, class ChunkFn>
std::vector<Acc> map_chunks(uint64_t total, uint64_t chunk_size, int workers, ChunkFn fn) {
    const uint64_t n_chunks = chunk_size == 0 ? 0 : (total + chunk_size - 1) / chunk_size;
    std::vector<Acc> out(n_chunks);
    if (n_chunks == 0) return out;

    const int n_workers = std::min<uint64_t>(resolve_workers(workers), n_chunks);
    if (n_workers <= 1) {
        for (uint64_t c = 0; c < n_chunks; ++c)
            out[c] = fn(c * chunk_size, std::min(total, (c + 1) * chunk_size));
        return out;
    }

    std::atomic<uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                out[c] = fn(c * chunk_size, std::min(total, (c + 1) * chunk_size));
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

}  // namespace zerocorr
