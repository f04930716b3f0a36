#include "solver.hpp"

#include <algorithm>
#include <unordered_map>

namespace bpm::solver {

namespace {

struct cover_ctx {
    u32 universe;
    const std::vector<bitset>* sets;
    std::vector<std::vector<u32>> covering;  // element -> set indices
    u64 nodes = 0, node_budget = 0;
    u32 best = 0;  // current upper bound (cap+1 when nothing found yet)
    bool found = false;
    std::vector<u32> best_sets, cur_sets;

    // Greedy pairwise-incompatible elements: no candidate set covers two of
    // them, so each needs its own part.
    u32 lower_bound(const bitset& uncovered) const {
        std::vector<u8> blocked(sets->size(), 0);
        u32 lb = 0;
        for (u32 e = 0; e < universe; ++e) {
            if (!uncovered.test(e)) continue;
            bool free_elem = true;
            for (u32 s : covering[e])
                if (blocked[s]) { free_elem = false; break; }
            if (!free_elem) continue;
            ++lb;
            for (u32 s : covering[e]) blocked[s] = 1;
        }
        return lb;
    }

    void search(bitset uncovered, u32 depth) {
        if (uncovered.none()) {
            if (depth < best) {
                best = depth;
                found = true;
                best_sets = cur_sets;
            }
            return;
        }
        if (++nodes > node_budget)
            throw resource_error("set-cover budget exhausted; best upper bound " +
                                 (found ? std::to_string(best) : std::string("none")) +
                                 ", depth reached " + std::to_string(depth));
        if (depth + 1 >= best) return;
        if (depth + lower_bound(uncovered) >= best) return;

        // branch on the uncovered element with the fewest candidates
        u32 pivot = ~0u, fewest = ~0u;
        for (u32 e = 0; e < universe; ++e) {
            if (!uncovered.test(e)) continue;
            u32 c = static_cast<u32>(covering[e].size());
            if (c < fewest) {
                fewest = c;
                pivot = e;
            }
        }
        if (fewest == 0) return;  // uncoverable element

        std::vector<u32> cands = covering[pivot];
        std::vector<u32> gain(cands.size());
        for (size_t i = 0; i < cands.size(); ++i)
            gain[i] = uncovered.count_and((*sets)[cands[i]]);
        std::vector<u32> ord(cands.size());
        for (u32 i = 0; i < ord.size(); ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](u32 a, u32 b) {
            if (gain[a] != gain[b]) return gain[a] > gain[b];
            return cands[a] < cands[b];
        });
        for (u32 oi : ord) {
            u32 s = cands[oi];
            bitset next = uncovered;
            next.andnot_with((*sets)[s]);
            cur_sets.push_back(s);
            search(std::move(next), depth + 1);
            cur_sets.pop_back();
        }
    }
};

}  // namespace

cover_solution exact_set_cover(u32 universe, const std::vector<bitset>& sets, u32 cap,
                               u64 node_budget) {
    cover_solution sol;
    bitset all(universe);
    for (u32 e = 0; e < universe; ++e) all.set(e);
    if (universe == 0) {
        sol.feasible = true;
        sol.size = 0;
        return sol;
    }
    cover_ctx ctx;
    ctx.universe = universe;
    ctx.sets = &sets;
    ctx.node_budget = node_budget;
    ctx.covering.resize(universe);
    for (u32 s = 0; s < sets.size(); ++s)
        for (u32 e = 0; e < universe; ++e)
            if (sets[s].test(e)) ctx.covering[e].push_back(s);
    u32 hard_cap = (cap == ~0u) ? universe : std::min(cap, universe);
    ctx.best = hard_cap + 1;
    ctx.search(all, 0);
    if (!ctx.found) return sol;  // infeasible within cap
    sol.feasible = true;
    sol.size = ctx.best;
    sol.chosen = ctx.best_sets;
    return sol;
}

namespace {

struct partition_ctx {
    u32 rows, cols;
    const std::vector<u32>* cells;  // value at r*cols+c, 0 = outside universe
    part_rule rule;
    u64 nodes = 0, node_budget = 0;
    u32 best = ~0u;
    std::vector<grid_part> best_parts, cur_parts;
    std::unordered_map<u64, u32> no_better;  // uncovered-mask -> depth bound proven fruitless

    u32 value_at(u32 r, u32 c) const { return (*cells)[r * cols + c]; }

    // Can cells (r,c) and (r2,c2) ever sit in one part of the remaining grid?
    bool compatible(u64 uncovered, u32 r, u32 c, u32 r2, u32 c2) const {
        for (u32 a : {r, r2})
            for (u32 b : {c, c2}) {
                u32 pos = a * cols + b;
                if (!((uncovered >> pos) & 1)) return false;
            }
        if (rule == part_rule::monochromatic) {
            u32 v = value_at(r, c);
            return value_at(r, c2) == v && value_at(r2, c) == v && value_at(r2, c2) == v;
        }
        return value_at(r, c) == value_at(r2, c) && value_at(r, c2) == value_at(r2, c2);
    }

    u32 lower_bound(u64 uncovered) const {
        u32 lb = 0;
        std::vector<std::pair<u32, u32>> kept;
        u64 rest = uncovered;
        while (rest) {
            u32 pos = static_cast<u32>(ctz64(rest));
            rest &= rest - 1;
            u32 r = pos / cols, c = pos % cols;
            bool indep = true;
            for (auto [kr, kc] : kept)
                if (compatible(uncovered, r, c, kr, kc)) { indep = false; break; }
            if (indep) {
                kept.emplace_back(r, c);
                ++lb;
            }
        }
        return lb;
    }

    void search(u64 uncovered, u32 depth) {
        if (uncovered == 0) {
            if (depth < best) {
                best = depth;
                best_parts = cur_parts;
            }
            return;
        }
        if (++nodes > node_budget)
            throw resource_error("partition budget exhausted; best known " +
                                 (best == ~0u ? std::string("none") : std::to_string(best)));
        if (depth >= best) return;
        auto it = no_better.find(uncovered);
        u32 slack = best - depth;  // improvements must finish in < slack parts
        if (it != no_better.end() && it->second >= slack) return;
        if (depth + 1 >= best) return;
        if (depth + lower_bound(uncovered) >= best) return;

        u32 pos = static_cast<u32>(ctz64(uncovered));
        u32 r0 = pos / cols, c0 = pos % cols;
        u32 v0 = value_at(r0, c0);

        // rows that may join the pivot's part
        u64 row_cand = 0;
        for (u32 r = 0; r < rows; ++r) {
            if (r == r0) continue;
            u32 p = r * cols + c0;
            if (((uncovered >> p) & 1) && value_at(r, c0) == v0) row_cand |= u64(1) << r;
        }

        struct cand {
            u64 rmask, cmask, cellmask;
        };
        std::vector<cand> cands;
        // enumerate P over submasks of row_cand (plus r0), then Q over
        // submasks of the maximal consistent column set
        u64 sub = row_cand;
        for (;;) {
            u64 pmask = sub | (u64(1) << r0);
            u64 qmax = 0;
            for (u32 c = 0; c < cols; ++c) {
                u32 ref = ~0u;
                bool ok = true;
                u64 pm = pmask;
                while (pm) {
                    u32 r = static_cast<u32>(ctz64(pm));
                    pm &= pm - 1;
                    u32 p = r * cols + c;
                    if (!((uncovered >> p) & 1)) { ok = false; break; }
                    u32 v = value_at(r, c);
                    if (v == 0) { ok = false; break; }
                    if (rule == part_rule::monochromatic && v != v0) { ok = false; break; }
                    if (ref == ~0u) ref = v;
                    else if (v != ref) { ok = false; break; }
                }
                if (ok && ref != ~0u) qmax |= u64(1) << c;
            }
            u64 qex = qmax & ~(u64(1) << c0);  // c0 is mandatory
            u64 qsub = qex;
            for (;;) {
                u64 qmask = qsub | (u64(1) << c0);
                u64 cellmask = 0;
                u64 pm = pmask;
                while (pm) {
                    u32 r = static_cast<u32>(ctz64(pm));
                    pm &= pm - 1;
                    u64 qm = qmask;
                    while (qm) {
                        u32 c = static_cast<u32>(ctz64(qm));
                        qm &= qm - 1;
                        cellmask |= u64(1) << (r * cols + c);
                    }
                }
                cands.push_back({pmask, qmask, cellmask});
                if (qsub == 0) break;
                qsub = (qsub - 1) & qex;
            }
            if (sub == 0) break;
            sub = (sub - 1) & row_cand;
        }
        std::sort(cands.begin(), cands.end(), [](const cand& a, const cand& b) {
            int pa = popcount64(a.cellmask), pb = popcount64(b.cellmask);
            if (pa != pb) return pa > pb;
            if (a.rmask != b.rmask) return a.rmask < b.rmask;
            return a.cmask < b.cmask;
        });
        for (const cand& cd : cands) {
            cur_parts.push_back({cd.rmask, cd.cmask});
            search(uncovered & ~cd.cellmask, depth + 1);
            cur_parts.pop_back();
            if (depth + 1 >= best) break;  // tightened during recursion
        }
        // record: uncovered could not be finished within `slack` parts
        u32 proven = best - depth;
        auto& slot = no_better[uncovered];
        slot = std::max(slot, proven);
    }
};

}  // namespace

partition_solution exact_rect_partition(u32 rows, u32 cols, const std::vector<u32>& cells,
                                        part_rule rule, u64 node_budget) {
    check_arg(u64(rows) * cols <= 64, "partition grid exceeds 64 cells");
    check_arg(cells.size() == u64(rows) * cols, "grid shape mismatch");
    partition_ctx ctx;
    ctx.rows = rows;
    ctx.cols = cols;
    ctx.cells = &cells;
    ctx.rule = rule;
    ctx.node_budget = node_budget;
    u64 uncovered = 0;
    for (u32 p = 0; p < rows * cols; ++p)
        if (cells[p] != 0) uncovered |= u64(1) << p;
    u32 support = static_cast<u32>(popcount64(uncovered));
    ctx.best = support + 1;  // one singleton part per cell always works
    if (support == 0) return {0, {}};
    ctx.search(uncovered, 0);
    check_invariant(ctx.best <= support, "partition search failed to find the trivial partition");
    partition_solution sol;
    sol.size = ctx.best;
    sol.parts = ctx.best_parts;
    return sol;
}

}  // namespace bpm::solver
