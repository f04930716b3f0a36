#include <algorithm>
#include <unordered_map>

#include "bpm/measures.hpp"
#include "grid.hpp"
#include "solver.hpp"

namespace bpm {

namespace {

// Certificate part from a grid_part of f_A.
rect_part part_from_grid(const truth_table& f, var_set A, const grid::matrix_grid& g,
                         solver::grid_part p) {
    std::vector<u8> rsel(g.rows, 0);
    std::vector<u32> cval(g.cols, 0);
    u32 any_row = static_cast<u32>(ctz64(p.rows_mask));
    for (u32 r = 0; r < g.rows; ++r)
        if ((p.rows_mask >> r) & 1) rsel[r] = 1;
    for (u32 c = 0; c < g.cols; ++c)
        if ((p.cols_mask >> c) & 1) cval[c] = g.at(any_row, c);
    return grid::make_part(f, A, rsel, cval);
}

cover_result partition_fixed_impl(const truth_table& f, var_set A) {
    check_arg(f.d() == 2, "partition numbers live on the boolean domain");
    grid::matrix_grid g = grid::extract_grid(f, A);
    if (u64(g.rows) * g.cols > 64)
        throw resource_error("partition: split grid beyond 64 cells");
    solver::partition_solution sol = solver::exact_rect_partition(
        g.rows, g.cols, g.vals, solver::part_rule::column_consistent);
    cover_result out;
    out.value = sol.size;
    out.certificate.kind = cert_kind::partition;
    for (auto& p : sol.parts) out.certificate.parts.push_back(part_from_grid(f, A, g, p));
    out.certificate.verify_against(f);
    return out;
}

}  // namespace

cover_result partition_plus_fixed(const truth_table& f, var_set A) {
    return partition_fixed_impl(f, A);
}

u64 mono_partition_number(const truth_table& f, var_set A) {
    check_arg(f.is_boolean() && f.d() == 2, "monochromatic partition needs a boolean function");
    grid::matrix_grid g = grid::extract_grid(f, A);
    if (u64(g.rows) * g.cols > 64)
        throw resource_error("partition: split grid beyond 64 cells");
    // shift values so zero cells participate in the partition too
    std::vector<u32> shifted(g.vals);
    for (u32& v : shifted) ++v;
    solver::partition_solution sol = solver::exact_rect_partition(
        g.rows, g.cols, shifted, solver::part_rule::monochromatic);
    return sol.size;
}

namespace {

// P+(f,k): pivot-driven branch and bound over point sets, parts drawn from
// any |A| = k split. Mirrors the fixed-A engine but re-derives candidates
// per split at every node.
struct kpart_ctx {
    const truth_table* f;
    u32 k;
    std::vector<u32> supp;           // point ids -> global index
    std::vector<u32> id_of;          // global index -> id or ~0
    std::vector<var_set> splits;
    u64 nodes = 0, node_budget = 300'000'000;
    u32 best = ~0u;
    std::unordered_map<u64, u32> no_better;
    struct chosen_part {
        var_set A;
        u64 pts = 0;
    };
    std::vector<chosen_part> cur, bestparts;
    // per split: coordinate maps global->alpha,beta and shape
    struct split_info {
        var_set A;
        u64 rows, cols;
        std::vector<u64> alpha_of, beta_of;   // by global index
        std::vector<u64> point_of;            // alpha*cols+beta -> global
    };
    std::vector<split_info> infos;

    void prepare() {
        for (var_set A : splits) {
            split_view v(*f, A);
            split_info si;
            si.A = A;
            si.rows = v.rows();
            si.cols = v.cols();
            si.alpha_of.assign(f->size(), 0);
            si.beta_of.assign(f->size(), 0);
            si.point_of.assign(f->size(), 0);
            for (u64 a = 0; a < si.rows; ++a)
                for (u64 b = 0; b < si.cols; ++b) {
                    u64 x = v.global_index(a, b);
                    si.alpha_of[x] = a;
                    si.beta_of[x] = b;
                    si.point_of[a * si.cols + b] = x;
                }
            infos.push_back(std::move(si));
        }
    }

    u32 value_of_id(u32 id) const { return f->at(supp[id]); }

    bool cell_free(const split_info& si, u64 uncovered, u64 a, u64 b, u32& val) const {
        u64 x = si.point_of[a * si.cols + b];
        val = f->at(x);
        if (val == 0) return false;
        u32 id = id_of[x];
        return id != ~0u && ((uncovered >> id) & 1);
    }

    u32 lower_bound(u64 uncovered) const {
        // two points can share a part only if they fit one rectangle in SOME
        // split; cheap necessary test: for each split, closure cells free and
        // column-consistent. Greedy independent set over that relation.
        std::vector<u32> kept;
        u64 rest = uncovered;
        u32 lb = 0;
        while (rest) {
            u32 id = static_cast<u32>(ctz64(rest));
            rest &= rest - 1;
            bool indep = true;
            for (u32 kid : kept)
                if (joinable(uncovered, id, kid)) { indep = false; break; }
            if (indep) {
                kept.push_back(id);
                ++lb;
            }
        }
        return lb;
    }

    bool joinable(u64 uncovered, u32 id1, u32 id2) const {
        for (const split_info& si : infos) {
            u64 a1 = si.alpha_of[supp[id1]], b1 = si.beta_of[supp[id1]];
            u64 a2 = si.alpha_of[supp[id2]], b2 = si.beta_of[supp[id2]];
            u32 v11, v12, v21, v22;
            if (!cell_free(si, uncovered, a1, b1, v11)) continue;
            if (!cell_free(si, uncovered, a1, b2, v12)) continue;
            if (!cell_free(si, uncovered, a2, b1, v21)) continue;
            if (!cell_free(si, uncovered, a2, b2, v22)) continue;
            if (v11 == v21 && v12 == v22) return true;  // columns consistent
        }
        return false;
    }

    void search(u64 uncovered, u32 depth) {
        if (uncovered == 0) {
            if (depth < best) {
                best = depth;
                bestparts = cur;
            }
            return;
        }
        if (++nodes > node_budget) throw resource_error("k-partition budget exhausted");
        if (depth >= best) return;
        u32 slack = best - depth;
        auto it = no_better.find(uncovered);
        if (it != no_better.end() && it->second >= slack) return;
        if (depth + 1 >= best) return;
        if (depth + lower_bound(uncovered) >= best) return;

        u32 pivot = static_cast<u32>(ctz64(uncovered));
        struct cand {
            u64 pts;
            u32 split;
        };
        std::vector<cand> cands;
        std::unordered_map<u64, u8> seen;
        for (u32 s = 0; s < infos.size(); ++s) {
            const split_info& si = infos[s];
            u64 x0 = supp[pivot];
            u64 a0 = si.alpha_of[x0], b0 = si.beta_of[x0];
            u32 v0 = f->at(x0);
            // candidate rows sharing the pivot column value
            std::vector<u64> rowlist;
            for (u64 a = 0; a < si.rows; ++a) {
                if (a == a0) continue;
                u32 v;
                if (cell_free(si, uncovered, a, b0, v) && v == v0) rowlist.push_back(a);
            }
            u32 rc = static_cast<u32>(rowlist.size());
            for (u64 rsub = 0; rsub < (u64(1) << rc); ++rsub) {
                std::vector<u64> P{a0};
                for (u32 i = 0; i < rc; ++i)
                    if ((rsub >> i) & 1) P.push_back(rowlist[i]);
                // maximal consistent column set for P
                std::vector<u64> Qmax;
                for (u64 b = 0; b < si.cols; ++b) {
                    u32 ref = ~0u;
                    bool ok = true;
                    for (u64 a : P) {
                        u32 v;
                        if (!cell_free(si, uncovered, a, b, v)) { ok = false; break; }
                        if (ref == ~0u) ref = v;
                        else if (v != ref) { ok = false; break; }
                    }
                    if (ok) Qmax.push_back(b);
                }
                std::vector<u64> Qex;
                for (u64 b : Qmax)
                    if (b != b0) Qex.push_back(b);
                u32 qc = static_cast<u32>(Qex.size());
                if (qc > 20) throw resource_error("k-partition candidate explosion");
                for (u64 qsub = 0; qsub < (u64(1) << qc); ++qsub) {
                    u64 pts = 0;
                    std::vector<u64> Q{b0};
                    for (u32 i = 0; i < qc; ++i)
                        if ((qsub >> i) & 1) Q.push_back(Qex[i]);
                    for (u64 a : P)
                        for (u64 b : Q) pts |= u64(1) << id_of[si.point_of[a * si.cols + b]];
                    if (seen.emplace(pts, 1).second) cands.push_back({pts, s});
                }
            }
        }
        std::sort(cands.begin(), cands.end(), [](const cand& a, const cand& b) {
            int pa = popcount64(a.pts), pb = popcount64(b.pts);
            if (pa != pb) return pa > pb;
            if (a.pts != b.pts) return a.pts < b.pts;
            return a.split < b.split;
        });
        for (const cand& cd : cands) {
            cur.push_back({infos[cd.split].A, cd.pts});
            search(uncovered & ~cd.pts, depth + 1);
            cur.pop_back();
            if (depth + 1 >= best) break;
        }
        u32 proven = best - depth;
        auto& slot = no_better[uncovered];
        slot = std::max(slot, proven);
    }
};

}  // namespace

cover_result partition_plus_k(const truth_table& f, u32 k) {
    check_arg(f.d() == 2, "partition numbers live on the boolean domain");
    check_arg(k >= 1 && k <= f.n(), "rectangle size out of range");
    if (f.n() > 6) throw resource_error("k-partition limited to 6 variables");
    kpart_ctx ctx;
    ctx.f = &f;
    ctx.k = k;
    ctx.id_of.assign(f.size(), ~0u);
    for (u64 x = 0; x < f.size(); ++x)
        if (f.at(x)) {
            ctx.id_of[x] = static_cast<u32>(ctx.supp.size());
            ctx.supp.push_back(static_cast<u32>(x));
        }
    cover_result out;
    out.certificate.kind = cert_kind::partition;
    if (ctx.supp.empty()) return out;
    for (u64 m : masks_of_size(f.n(), k)) ctx.splits.emplace_back(f.n(), m);
    ctx.prepare();
    ctx.best = static_cast<u32>(ctx.supp.size()) + 1;
    ctx.search((ctx.supp.size() == 64) ? ~u64(0) : (u64(1) << ctx.supp.size()) - 1, 0);
    out.value = ctx.best;
    for (auto& cp : ctx.bestparts) {
        // rebuild row/col selections from the point set
        split_view v(f, cp.A);
        std::vector<u8> rsel(v.rows(), 0);
        std::vector<u32> cval(v.cols(), 0);
        u64 pts = cp.pts;
        while (pts) {
            u32 id = static_cast<u32>(ctz64(pts));
            pts &= pts - 1;
            u64 x = ctx.supp[id];
            bool found = false;
            for (u64 a = 0; a < v.rows() && !found; ++a)
                for (u64 b = 0; b < v.cols() && !found; ++b)
                    if (v.global_index(a, b) == x) {
                        rsel[a] = 1;
                        cval[b] = f.at(x);
                        found = true;
                    }
        }
        out.certificate.parts.push_back(grid::make_part(f, cp.A, rsel, cval));
    }
    out.certificate.verify_against(f);
    return out;
}

measure_report measure_P_plus(const truth_table& f) {
    check_arg(f.d() == 2, "P+ lives on the boolean domain");
    if (f.n() > 6) throw resource_error("P+ limited to 6 variables");
    measure_report rep;
    rep.measure = "Pplus";
    u64 best = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        std::vector<u64> masks = masks_of_size(f.n(), k);
        std::sort(masks.begin(), masks.end(), mask_lex_less);
        u64 inner = ~u64(0);
        u64 inner_mask = 0;
        for (u64 m : masks) {
            cover_result r = partition_plus_fixed(f, var_set(f.n(), m));
            if (r.value < inner) {
                inner = r.value;
                inner_mask = m;
            }
        }
        if (rep.witness_k == 0 || inner > best) {
            best = inner;
            rep.witness_k = k;
            rep.witness_A = inner_mask;
        }
    }
    rep.value = ratio(best);
    cover_result win = partition_plus_fixed(f, var_set(f.n(), rep.witness_A));
    check_invariant(win.value == best, "P+ witness re-evaluation mismatch");
    rep.certificate = std::move(win.certificate);
    return rep;
}

measure_report measure_P_plus_hat(const truth_table& f) {
    check_arg(f.d() == 2, "P+hat lives on the boolean domain");
    if (f.n() > 6) throw resource_error("P+hat limited to 6 variables");
    measure_report rep;
    rep.measure = "Pplushat";
    u64 best = 0;
    std::optional<rect_certificate> cert;
    for (u32 k = 1; k <= f.n(); ++k) {
        cover_result r = partition_plus_k(f, k);
        if (rep.witness_k == 0 || r.value > best) {
            best = r.value;
            rep.witness_k = k;
            cert = std::move(r.certificate);
        }
    }
    rep.value = ratio(best);
    rep.certificate = std::move(cert);
    return rep;
}

measure_report measure_P(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "P requires a boolean function");
    if (f.n() > 6) throw resource_error("P limited to 6 variables");
    truth_table nf = combine(combine_op::negate, f);
    measure_report rep;
    rep.measure = "P";
    u64 best = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        std::vector<u64> masks = masks_of_size(f.n(), k);
        std::sort(masks.begin(), masks.end(), mask_lex_less);
        u64 inner = ~u64(0);
        u64 inner_mask = 0;
        for (u64 m : masks) {
            var_set A(f.n(), m);
            u64 v = partition_plus_fixed(f, A).value + partition_plus_fixed(nf, A).value;
            // the two one-sided partitions assemble the full monochromatic one
            u64 mono = mono_partition_number(f, A);
            check_invariant(v == mono,
                            "P+(f,A) + P+(~f,A) disagrees with the monochromatic partition");
            if (v < inner) {
                inner = v;
                inner_mask = m;
            }
        }
        if (rep.witness_k == 0 || inner > best) {
            best = inner;
            rep.witness_k = k;
            rep.witness_A = inner_mask;
        }
    }
    rep.value = ratio(best);
    return rep;
}

measure_report measure_P_hat(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "P_hat requires a boolean function");
    truth_table nf = combine(combine_op::negate, f);
    measure_report pos = measure_P_plus_hat(f);
    measure_report neg = measure_P_plus_hat(nf);
    measure_report rep;
    rep.measure = "Phat";
    if (neg.value > pos.value) {
        rep.value = neg.value;
        rep.witness_k = neg.witness_k;
        rep.certificate = std::move(neg.certificate);
    } else {
        rep.value = pos.value;
        rep.witness_k = pos.witness_k;
        rep.certificate = std::move(pos.certificate);
    }
    return rep;
}

}  // namespace bpm
