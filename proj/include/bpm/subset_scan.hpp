#pragma once

#include "bpm/truth_table.hpp"

namespace bpm {

// Fast (nrows, mult) of f_A for a single variable mask. Agrees with
// row_stats() everywhere; exists because the measure scans touch every
// subset of [n] and the split_view path is too slow for that.
row_stats_t subset_stats(const truth_table& f, u64 amask);

// (nrows, mult) for every mask of [n], indexed by mask. Deterministic
// under any worker count.
struct subset_scan_result {
    u32 n = 0;
    std::vector<u32> nrows;
    std::vector<u32> mult;
};
subset_scan_result scan_all_subsets(const truth_table& f);

// Per-cardinality aggregate of a scan: the inner min/max of the max-min
// measures, with lexicographically smallest witness masks.
struct layer_aggregate {
    u64 min_nrows = 0;
    u64 min_nrows_mask = 0;
    u64 max_mult = 0;
    u64 max_mult_mask = 0;
};
std::vector<layer_aggregate> aggregate_layers(const subset_scan_result& scan);

// All masks of [n] with popcount k, ascending numeric order.
std::vector<u64> masks_of_size(u32 n, u32 k);

}  // namespace bpm
