#include "bpm/tseitin.hpp"

#include <algorithm>
#include <istream>
#include <numeric>

#include "bpm/measures.hpp"

namespace bpm::tseitin {

namespace {

struct union_find {
    std::vector<u32> parent;
    explicit union_find(u32 n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    u32 find(u32 x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(u32 a, u32 b) { parent[find(a)] = find(b); }
    u32 components() {
        u32 c = 0;
        for (u32 i = 0; i < parent.size(); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

void validate(const graph& g) {
    std::vector<std::pair<u32, u32>> seen;
    for (auto [u, v] : g.edges) {
        check_arg(u >= 1 && u <= g.n && v >= 1 && v <= g.n, "edge endpoint out of range");
        check_arg(u != v, "self-loops are not allowed");
        auto key = std::minmax(u, v);
        check_arg(std::find(seen.begin(), seen.end(),
                            std::make_pair(key.first, key.second)) == seen.end(),
                  "parallel edges are not allowed");
        seen.emplace_back(key.first, key.second);
    }
}

}  // namespace

graph read_graph(std::istream& is) {
    graph g;
    u32 m;
    check_arg(static_cast<bool>(is >> g.n >> m), "graph file must start with 'n m'");
    for (u32 i = 0; i < m; ++i) {
        u32 u, v;
        check_arg(static_cast<bool>(is >> u >> v), "truncated edge list");
        g.edges.emplace_back(u, v);
    }
    validate(g);
    return g;
}

std::vector<u8> read_charge(std::istream& is, u32 n) {
    std::vector<u8> c(n);
    for (u32 i = 0; i < n; ++i) {
        u32 b;
        check_arg(static_cast<bool>(is >> b) && b <= 1, "charge file needs n bits");
        c[i] = static_cast<u8>(b);
    }
    return c;
}

u32 component_count(const graph& g) {
    union_find uf(g.n);
    for (auto [u, v] : g.edges) uf.unite(u - 1, v - 1);
    return uf.components();
}

bool satisfiable(const instance& inst) {
    check_arg(inst.charge.size() == inst.g.n, "charge vector arity mismatch");
    union_find uf(inst.g.n);
    for (auto [u, v] : inst.g.edges) uf.unite(u - 1, v - 1);
    std::vector<u32> parity(inst.g.n, 0);
    for (u32 v = 0; v < inst.g.n; ++v) parity[uf.find(v)] ^= inst.charge[v];
    for (u32 v = 0; v < inst.g.n; ++v)
        if (parity[v]) return false;
    return true;
}

truth_table tseitin_table(const instance& inst) {
    validate(inst.g);
    check_arg(inst.charge.size() == inst.g.n, "charge vector arity mismatch");
    u32 m = inst.g.m();
    check_arg(m <= 20, "Tseitin table limited to 20 edges");
    return build_table(m, 2, [&inst, m](std::span<const u32> p) -> u32 {
        std::vector<u32> acc(inst.g.n, 0);
        for (u32 e = 0; e < m; ++e)
            if (p[e]) {
                acc[inst.g.edges[e].first - 1] ^= 1;
                acc[inst.g.edges[e].second - 1] ^= 1;
            }
        for (u32 v = 0; v < inst.g.n; ++v)
            if (acc[v] != inst.charge[v]) return 0;
        return 1;
    });
}

u64 count_sat(const instance& inst) {
    truth_table t = tseitin_table(inst);
    u64 count = 0;
    for (u64 x = 0; x < t.size(); ++x) count += t.at(x);
    if (satisfiable(inst)) {
        u32 kap = component_count(inst.g);
        u64 expect = u64(1) << (inst.g.m() - inst.g.n + kap);
        check_invariant(count == expect,
                        "satisfying count disagrees with 2^(m-n+kappa)");
    } else {
        check_invariant(count == 0, "unsatisfiable instance has satisfying points");
    }
    return count;
}

kappa_profile_t kappa_profile(const graph& g) {
    validate(g);
    u32 m = g.m();
    check_arg(m <= 20, "kappa profile limited to 20 edges");
    kappa_profile_t prof;
    prof.kappa.assign(m + 1, 0);
    for (u64 sub = 0; sub < (u64(1) << m); ++sub) {
        union_find uf(g.n);
        for (u32 e = 0; e < m; ++e)
            if ((sub >> e) & 1) uf.unite(g.edges[e].first - 1, g.edges[e].second - 1);
        u32 l = static_cast<u32>(popcount64(sub));
        prof.kappa[l] = std::max(prof.kappa[l], uf.components());
    }
    prof.kappa_G = component_count(g);
    check_invariant(prof.kappa[0] == g.n, "kappa(0) must equal n");
    check_invariant(prof.kappa[m] == prof.kappa_G, "kappa(m) must equal kappa(G)");
    for (u32 l = 0; l < m; ++l)
        check_invariant(prof.kappa[l] >= prof.kappa[l + 1], "kappa profile must be non-increasing");
    return prof;
}

bound_result tseitin_bound(const instance& inst) {
    check_arg(satisfiable(inst), "the lower bound assumes a satisfiable instance");
    kappa_profile_t prof = kappa_profile(inst.g);
    u32 n = inst.g.n, m = inst.g.m();
    bound_result best;
    for (u32 l = 1; l <= m; ++l) {
        i64 expo = i64(n) - prof.kappa[l] - prof.kappa[m - l] + prof.kappa_G;
        u64 v = expo <= 0 ? 1 : (u64(1) << expo);
        if (v > best.value) {
            best.value = v;
            best.witness_ell = l;
        }
    }
    return best;
}

crosscheck_result crosscheck_chat(const instance& inst) {
    check_arg(inst.g.m() <= 6, "exact C_hat cross-check limited to 6 edges");
    crosscheck_result res;
    res.bound = tseitin_bound(inst).value;
    res.c_hat = measure_C_hat(tseitin_table(inst)).value.num;
    res.holds = res.bound <= res.c_hat;
    return res;
}

}  // namespace bpm::tseitin
