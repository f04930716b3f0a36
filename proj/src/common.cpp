#include "bpm/common.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace bpm {

namespace {

u64 env_u64(const char* name, u64 fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v) return fallback;
    return static_cast<u64>(parsed);
}

std::atomic<u64> g_cell_budget{env_u64("BPM_CELL_BUDGET", u64(1) << 26)};
std::atomic<u32> g_threads{0};  // 0 = unresolved

}  // namespace

u64 cell_budget() { return g_cell_budget.load(); }
void set_cell_budget(u64 cells) { g_cell_budget.store(cells); }

u64 checked_pow(u64 d, u32 n, u64 budget) {
    u64 r = 1;
    for (u32 i = 0; i < n; ++i) {
        if (r > budget / d)
            throw resource_error("table of " + std::to_string(d) + "^" + std::to_string(n) +
                                 " cells exceeds the cell budget of " + std::to_string(budget) +
                                 " (set BPM_CELL_BUDGET to override)");
        r *= d;
    }
    return r;
}

std::vector<u32> mask_to_indices(u64 mask) {
    std::vector<u32> out;
    while (mask) {
        out.push_back(static_cast<u32>(ctz64(mask)) + 1);
        mask &= mask - 1;
    }
    return out;
}

u64 indices_to_mask(const std::vector<u32>& idx, u32 n) {
    u64 mask = 0;
    for (u32 i : idx) {
        check_arg(i >= 1 && i <= n, "variable index " + std::to_string(i) + " out of range [1," +
                                        std::to_string(n) + "]");
        mask |= u64(1) << (i - 1);
    }
    return mask;
}

u32 worker_threads() {
    u32 t = g_threads.load();
    if (t == 0) {
        t = static_cast<u32>(env_u64("BPM_THREADS", 0));
        if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
        g_threads.store(t);
    }
    return t;
}

void set_worker_threads(u32 threads) { g_threads.store(threads == 0 ? 1 : threads); }

void parallel_for(u64 count, const std::function<void(u64, u64, u32)>& body) {
    if (count == 0) return;
    u32 nt = worker_threads();
    // Fixed chunking keyed to the count, not the thread pool, so results can
    // be reduced in chunk order independent of scheduling.
    u32 chunks = std::min<u64>(count, u64(nt) * 4);
    if (chunks <= 1) {
        body(0, count, 0);
        return;
    }
    u64 per = (count + chunks - 1) / chunks;
    std::atomic<u32> next{0};
    auto run = [&]() {
        for (;;) {
            u32 c = next.fetch_add(1);
            if (c >= chunks) return;
            u64 b = u64(c) * per;
            u64 e = std::min(count, b + per);
            if (b < e) body(b, e, c);
        }
    };
    std::vector<std::thread> pool;
    for (u32 i = 1; i < nt; ++i) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

}  // namespace bpm
