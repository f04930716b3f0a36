#pragma once

#include <string>

#include "bpm/truth_table.hpp"

namespace bpm::obdd {

// Reduced ordered decision diagram for a fixed order. Node 0/1 are the
// sinks (created only when reached); size counts all nodes including sinks,
// so constants have size 1.
struct diagram {
    std::vector<u32> order;  // order[i] = variable read at depth i (1-based)
    struct node {
        u32 level;  // depth at which the variable is read (0-based)
        u32 lo, hi;
    };
    std::vector<node> nodes;    // ids offset by the sinks: node i -> id i + 2
    u32 root = 0;               // id: 0/1 = sinks
    u32 sink_count = 0;
    std::vector<u32> level_count;  // nodes labelled order[i]

    u64 size() const { return nodes.size() + sink_count; }
    u32 evaluate(std::span<const u32> point) const;
    std::string to_dot() const;
};

diagram build_obdd(const truth_table& f, const std::vector<u32>& order);

struct level_profile_entry {
    u64 nrows = 0;  // distinct subfunctions after the prefix
    u64 u = 0;      // of those, the ones depending on the next variable
    u64 w = 0;      // the rest
};
struct level_profile_t {
    // entry i (0-based) describes prefix {order[0..i]}; u of the last entry
    // is the sink count by convention.
    std::vector<level_profile_entry> entries;
    u64 root_u = 0;  // 1 iff f depends on order[0]
};
level_profile_t level_profile(const truth_table& f, const std::vector<u32>& order);

struct min_obdd_result {
    u64 size = 0;
    std::vector<u32> order;
};
// Exact minimum over all n! orders via DP over variable subsets.
min_obdd_result min_obdd_size(const truth_table& f);
// Cross-check route: explicit enumeration of all n! orders.
min_obdd_result min_obdd_by_enumeration(const truth_table& f);

struct sandwich_report {
    u64 S = 0, S_star = 0, obdd = 0;
    u64 upper = 0;  // 1 + n * S_star
    bool holds = false;
};
sandwich_report check_sandwich(const truth_table& f);

}  // namespace bpm::obdd
