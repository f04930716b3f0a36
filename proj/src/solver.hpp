#pragma once

// Exact combinatorial solvers behind the cover/partition measures. Internal.

#include <vector>

#include "bpm/common.hpp"

namespace bpm::solver {

// Dynamic bitset sized at construction; universe elements are bit indices.
struct bitset {
    std::vector<u64> w;
    explicit bitset(u32 bits = 0) : w((bits + 63) / 64, 0) {}
    void set(u32 i) { w[i >> 6] |= u64(1) << (i & 63); }
    bool test(u32 i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    u32 count() const {
        u32 c = 0;
        for (u64 x : w) c += popcount64(x);
        return c;
    }
    bool none() const {
        for (u64 x : w)
            if (x) return false;
        return true;
    }
    bool subset_of(const bitset& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    bool intersects(const bitset& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    void or_with(const bitset& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    void andnot_with(const bitset& o) {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
    i64 first_set() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<i64>(i * 64 + ctz64(w[i]));
        return -1;
    }
    u32 count_and(const bitset& o) const {
        u32 c = 0;
        for (size_t i = 0; i < w.size(); ++i) c += popcount64(w[i] & o.w[i]);
        return c;
    }
    friend bool operator==(const bitset& a, const bitset& b) { return a.w == b.w; }
};

struct bitset_hash {
    size_t operator()(const bitset& b) const {
        u64 h = 0xcbf29ce484222325ull;
        for (u64 x : b.w) {
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

// Exact minimum set cover. `cap`: only look for solutions of size <= cap
// (~0u = unbounded). Infeasible-within-cap is reported, not an error; an
// exhausted node budget throws resource_error carrying the bounds found.
struct cover_solution {
    bool feasible = false;
    u32 size = 0;
    std::vector<u32> chosen;
};
cover_solution exact_set_cover(u32 universe, const std::vector<bitset>& sets, u32 cap = ~0u,
                               u64 node_budget = 200'000'000);

// Exact minimum partition of the nonzero cells of a rows x cols grid
// (rows*cols <= 64) into rectangles P x Q. Two disciplines:
//   column_consistent: within a part, the value may only depend on the column
//   monochromatic:     within a part, all values equal
// Both require all part cells nonzero (use value+1 shifting to partition
// zeros too, as the monochromatic C^D route does).
enum class part_rule : u8 { column_consistent, monochromatic };

struct grid_part {
    u64 rows_mask = 0, cols_mask = 0;
};
struct partition_solution {
    u32 size = 0;
    std::vector<grid_part> parts;
};
partition_solution exact_rect_partition(u32 rows, u32 cols, const std::vector<u32>& cells,
                                        part_rule rule, u64 node_budget = 200'000'000);

}  // namespace bpm::solver
