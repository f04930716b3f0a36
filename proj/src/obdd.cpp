#include "bpm/obdd.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "bpm/measures.hpp"
#include "bpm/subset_scan.hpp"

namespace bpm::obdd {

namespace {

void check_order(const truth_table& f, const std::vector<u32>& order) {
    check_arg(order.size() == f.n(), "order must list every variable once");
    u64 seen = 0;
    for (u32 v : order) {
        check_arg(v >= 1 && v <= f.n(), "order names an out-of-range variable");
        check_arg(!((seen >> (v - 1)) & 1), "order repeats a variable");
        seen |= u64(1) << (v - 1);
    }
}

// f with variables permuted so that order[i] is read at depth i; the
// reordered table g satisfies g(y_0..y_{n-1}) = f(x) with y_i = x_{order[i]}.
std::vector<u8> reorder_bits(const truth_table& f, const std::vector<u32>& order) {
    u32 n = f.n();
    std::vector<u8> g(f.size());
    // position of variable order[i] in the global index (bit n - order[i])
    std::vector<u32> src_bit(n);
    for (u32 i = 0; i < n; ++i) src_bit[i] = n - order[i];
    for (u64 y = 0; y < f.size(); ++y) {
        u64 x = 0;
        for (u32 i = 0; i < n; ++i)
            if ((y >> (n - 1 - i)) & 1) x |= u64(1) << src_bit[i];
        g[y] = static_cast<u8>(f.at(x));
    }
    return g;
}

}  // namespace

u32 diagram::evaluate(std::span<const u32> point) const {
    u32 id = root;
    while (id >= 2) {
        const node& nd = nodes[id - 2];
        id = point[order[nd.level] - 1] ? nd.hi : nd.lo;
    }
    return id;
}

std::string diagram::to_dot() const {
    std::ostringstream os;
    os << "digraph obdd {\n";
    os << "  node [shape=circle];\n";
    os << "  s0 [shape=box,label=\"0\"]; s1 [shape=box,label=\"1\"];\n";
    for (size_t i = 0; i < nodes.size(); ++i) {
        os << "  n" << i + 2 << " [label=\"x" << order[nodes[i].level] << "\"];\n";
        auto edge = [&](u32 to, const char* style) {
            os << "  n" << i + 2 << " -> " << (to < 2 ? (to ? "s1" : "s0")
                                                      : "n" + std::to_string(to)) << style;
        };
        edge(nodes[i].lo, " [style=dashed];\n");
        edge(nodes[i].hi, ";\n");
    }
    os << "}\n";
    return os.str();
}

diagram build_obdd(const truth_table& f, const std::vector<u32>& order) {
    check_arg(f.is_boolean() && f.d() == 2, "OBDDs are built for boolean functions");
    check_arg(f.n() <= 20, "OBDD construction limited to 20 variables");
    check_order(f, order);
    u32 n = f.n();
    diagram dd;
    dd.order = order;
    dd.level_count.assign(n, 0);

    std::vector<u8> vals = reorder_bits(f, order);
    // ids for the current depth's subfunctions, folded bottom-up
    std::vector<u32> ids(vals.size());
    bool used_sink[2] = {false, false};
    for (u64 x = 0; x < vals.size(); ++x) {
        ids[x] = vals[x];
        used_sink[vals[x]] = true;
    }
    for (u32 depth = n; depth-- > 0;) {
        u64 blocks = u64(1) << depth;
        std::vector<u32> up(blocks);
        std::unordered_map<u64, u32> unique;
        for (u64 a = 0; a < blocks; ++a) {
            u32 lo = ids[2 * a], hi = ids[2 * a + 1];
            if (lo == hi) {
                up[a] = lo;
                continue;
            }
            u64 key = (u64(lo) << 32) | hi;
            auto it = unique.find(key);
            if (it != unique.end()) {
                up[a] = it->second;
                continue;
            }
            u32 id = static_cast<u32>(dd.nodes.size()) + 2;
            dd.nodes.push_back({depth, lo, hi});
            ++dd.level_count[depth];
            unique.emplace(key, id);
            up[a] = id;
        }
        ids = std::move(up);
    }
    dd.root = ids[0];
    dd.sink_count = (used_sink[0] ? 1 : 0) + (used_sink[1] ? 1 : 0);
    if (dd.root < 2) dd.sink_count = 1;  // constant: only its own sink
    return dd;
}

level_profile_t level_profile(const truth_table& f, const std::vector<u32>& order) {
    check_arg(f.is_boolean() && f.d() == 2, "level profiles are for boolean functions");
    check_order(f, order);
    u32 n = f.n();
    std::vector<u8> vals = reorder_bits(f, order);

    level_profile_t prof;
    prof.entries.resize(n);

    // prefix {order[0..i-1]} = first i reordered bits: rows are index blocks
    for (u32 i = 0; i <= n; ++i) {
        u64 rows = u64(1) << i;
        u64 cols = vals.size() >> i;
        // distinct rows + dependence of each distinct row on the next bit
        std::vector<u32> idx(rows);
        for (u64 a = 0; a < rows; ++a) idx[a] = static_cast<u32>(a);
        auto cmp = [&](u32 a, u32 b) {
            return std::lexicographical_compare(vals.begin() + u64(a) * cols,
                                                vals.begin() + (u64(a) + 1) * cols,
                                                vals.begin() + u64(b) * cols,
                                                vals.begin() + (u64(b) + 1) * cols);
        };
        auto eq = [&](u32 a, u32 b) {
            return std::equal(vals.begin() + u64(a) * cols, vals.begin() + (u64(a) + 1) * cols,
                              vals.begin() + u64(b) * cols);
        };
        std::sort(idx.begin(), idx.end(), cmp);
        u64 nrows = 0, u = 0;
        for (u64 t = 0; t < rows; ++t) {
            if (t > 0 && eq(idx[t], idx[t - 1])) continue;
            ++nrows;
            u32 a = idx[t];
            if (i == n) {
                ++u;  // convention: u counts the distinct values (sinks)
            } else {
                u64 half = cols / 2;
                bool dep = !std::equal(vals.begin() + u64(a) * cols,
                                       vals.begin() + u64(a) * cols + half,
                                       vals.begin() + u64(a) * cols + half);
                if (dep) ++u;
            }
        }
        if (i == 0) {
            prof.root_u = u;  // 1 iff f depends on order[0]
        } else {
            prof.entries[i - 1].nrows = nrows;
            prof.entries[i - 1].u = u;
            prof.entries[i - 1].w = nrows - u;
        }
    }
    return prof;
}

namespace {

// Distinct subfunctions of f_T that depend on variable v, for the DP cost.
// Rows of f_T are packed as padded bit slices with v placed at the top of
// the column coordinates, so the two v-halves of a row are contiguous.
struct dp_cost {
    const truth_table& f;
    u32 n;
    explicit dp_cost(const truth_table& t) : f(t), n(t.n()) {}

    u64 operator()(u64 tmask, u32 v) const {
        u32 l = static_cast<u32>(popcount64(tmask));
        u64 rows = u64(1) << l;
        u32 colbits = n - l;
        u64 cols = u64(1) << colbits;
        check_invariant(colbits >= 1, "dp cost needs the pivot variable free");

        // index-bit masks: variable i sits at index bit n-i
        u64 amask = 0;
        for (u32 i = 1; i <= n; ++i)
            if ((tmask >> (i - 1)) & 1) amask |= u64(1) << (n - i);
        u64 vbit = u64(1) << (n - v);
        u64 restmask = ~(amask | vbit) & ((u64(1) << n) - 1);

        u32 wpr = static_cast<u32>(std::max<u64>(1, cols / 64));  // words per row
        std::vector<u64> buf(rows * wpr, 0);
        auto gather = [](u64 x, u64 mask) {
            u64 res = 0, bit = 1;
            while (mask) {
                u64 low = mask & (~mask + 1);
                if (x & low) res |= bit;
                bit <<= 1;
                mask ^= low;
            }
            return res;
        };
        for (u64 x = 0; x < f.size(); ++x) {
            if (!f.at(x)) continue;
            u64 a = gather(x, amask);
            u64 b = gather(x, restmask) | ((x & vbit) ? (cols >> 1) : 0);
            buf[(a * wpr) + (b >> 6)] |= u64(1) << (b & 63);
        }

        std::vector<u32> order(rows);
        for (u64 a = 0; a < rows; ++a) order[a] = static_cast<u32>(a);
        auto cmp = [&](u32 a, u32 b) {
            return std::lexicographical_compare(&buf[u64(a) * wpr], &buf[u64(a) * wpr] + wpr,
                                                &buf[u64(b) * wpr], &buf[u64(b) * wpr] + wpr);
        };
        auto eq = [&](u32 a, u32 b) {
            return std::equal(&buf[u64(a) * wpr], &buf[u64(a) * wpr] + wpr, &buf[u64(b) * wpr]);
        };
        std::sort(order.begin(), order.end(), cmp);
        u64 count = 0;
        for (u64 t = 0; t < rows; ++t) {
            if (t > 0 && eq(order[t], order[t - 1])) continue;
            const u64* r = &buf[u64(order[t]) * wpr];
            bool dep;
            if (wpr == 1) {
                u64 half = cols >> 1;
                u64 lowmask = (half == 64) ? ~u64(0) : ((u64(1) << half) - 1);
                dep = (r[0] & lowmask) != ((r[0] >> half) & lowmask);
            } else {
                dep = !std::equal(r, r + wpr / 2, r + wpr / 2);
            }
            if (dep) ++count;
        }
        return count;
    }
};

}  // namespace

min_obdd_result min_obdd_size(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "OBDD minimization needs a boolean function");
    check_arg(f.n() >= 1, "OBDD minimization needs at least one variable");
    if (f.n() > 12) throw resource_error("min OBDD subset DP limited to 12 variables");
    u32 n = f.n();
    if (f.is_constant()) {
        min_obdd_result r;
        r.size = 1;
        for (u32 v = 1; v <= n; ++v) r.order.push_back(v);
        return r;
    }
    dp_cost cost(f);
    u64 full = (u64(1) << n) - 1;
    std::vector<u64> g(full + 1, ~u64(0));
    std::vector<u8> pick(full + 1, 0);
    g[0] = 0;
    for (u64 t = 1; t <= full; ++t) {
        u64 rest = t;
        while (rest) {  // v ascending, so ties keep the smallest variable
            u32 v = static_cast<u32>(ctz64(rest));
            rest &= rest - 1;
            u64 prev = t & ~(u64(1) << v);
            u64 cand = g[prev] + cost(prev, v + 1);
            if (cand < g[t]) {
                g[t] = cand;
                pick[t] = static_cast<u8>(v);
            }
        }
    }
    min_obdd_result r;
    r.size = g[full] + 2;  // internal nodes plus the two sinks
    // reconstruct the order: pick[t] is the variable read LAST within t
    std::vector<u32> rev;
    u64 t = full;
    while (t) {
        rev.push_back(pick[t] + 1);
        t &= ~(u64(1) << pick[t]);
    }
    r.order.assign(rev.rbegin(), rev.rend());
    return r;
}

min_obdd_result min_obdd_by_enumeration(const truth_table& f) {
    check_arg(f.n() >= 1 && f.n() <= 8, "order enumeration limited to 8 variables");
    std::vector<u32> order(f.n());
    for (u32 i = 0; i < f.n(); ++i) order[i] = i + 1;
    min_obdd_result best;
    best.size = ~u64(0);
    do {
        u64 sz = build_obdd(f, order).size();
        if (sz < best.size) {
            best.size = sz;
            best.order = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

sandwich_report check_sandwich(const truth_table& f) {
    sandwich_report rep;
    rep.S = measure_S(f).value.num;
    rep.S_star = measure_S_star(f).value;
    rep.obdd = min_obdd_size(f).size;
    rep.upper = 1 + u64(f.n()) * rep.S_star;
    rep.holds = rep.S <= rep.S_star && rep.S_star <= rep.obdd && rep.obdd <= rep.upper;
    return rep;
}

}  // namespace bpm::obdd
