#include <algorithm>
#include <unordered_map>

#include "bpm/measures.hpp"
#include "grid.hpp"
#include "solver.hpp"

namespace bpm {

namespace {

using solver::bitset;

// One A-rectangle candidate for the k-cover pool: its point set plus enough
// provenance to rebuild a certificate part.
struct pool_entry {
    bitset points;
    var_set A;
    std::vector<u8> row_sel;
    std::vector<u32> col_sel;
};

rect_part part_from_selection(const truth_table& f, const pool_entry& e) {
    std::vector<u32> cv(e.col_sel.begin(), e.col_sel.end());
    return grid::make_part(f, e.A, e.row_sel, cv);
}

// Candidate rectangles of f_A as point bitsets over a caller-chosen
// point-id map (~0u = point not in the universe).
void collect_rectangles(const truth_table& f, var_set A,
                        const std::vector<u32>& point_id, u32 universe,
                        std::vector<pool_entry>& out) {
    grid::matrix_grid g = grid::extract_grid(f, A);
    bool flip = g.cols > 64;
    grid::matrix_grid work = flip ? grid::transpose(g) : std::move(g);
    check_arg(work.cols <= 64, "cover: split too wide on both sides");
    for (auto& mr : grid::maximal_one_rectangles(work)) {
        pool_entry e;
        e.points = bitset(universe);
        e.A = A;
        u32 arows = flip ? work.cols : work.rows;
        u32 acols = flip ? work.rows : work.cols;
        e.row_sel.assign(arows, 0);
        e.col_sel.assign(acols, 0);
        for (u32 r = 0; r < work.rows; ++r) {
            if (!mr.rows.test(r)) continue;
            for (u32 c = 0; c < work.cols; ++c) {
                if (!((mr.cols >> c) & 1)) continue;
                u64 pt = work.point(r, c);
                u32 id = point_id[pt];
                check_invariant(id != ~0u, "cover: rectangle leaves the one-set");
                e.points.set(id);
                if (flip) {
                    e.row_sel[c] = 1;
                    e.col_sel[r] = 1;
                } else {
                    e.row_sel[r] = 1;
                    e.col_sel[c] = 1;
                }
            }
        }
        out.push_back(std::move(e));
    }
}

struct solve_out {
    bool feasible = true;
    u64 value = 0;
    rect_certificate cert;
};

solve_out solve_cover(const truth_table& f, const std::vector<var_set>& splits, u32 cap) {
    // universe: the one-points of f
    std::vector<u32> point_id(f.size(), ~0u);
    u32 universe = 0;
    for (u64 x = 0; x < f.size(); ++x)
        if (f.at(x)) point_id[x] = universe++;

    solve_out out;
    out.cert.kind = cert_kind::cover;
    if (universe == 0) return out;  // empty OR convention

    std::vector<pool_entry> pool;
    for (var_set A : splits) collect_rectangles(f, A, point_id, universe, pool);
    // dedupe identical point sets (the same rectangle can arise from many A)
    {
        std::unordered_map<size_t, std::vector<u32>> seen;
        std::vector<pool_entry> uniq;
        solver::bitset_hash h;
        for (auto& e : pool) {
            size_t hv = h(e.points);
            bool dup = false;
            for (u32 i : seen[hv])
                if (uniq[i].points == e.points) { dup = true; break; }
            if (!dup) {
                seen[hv].push_back(static_cast<u32>(uniq.size()));
                uniq.push_back(std::move(e));
            }
        }
        pool = std::move(uniq);
    }

    std::vector<bitset> sets;
    sets.reserve(pool.size());
    for (auto& e : pool) sets.push_back(e.points);
    solver::cover_solution sol = solver::exact_set_cover(universe, sets, cap);
    if (!sol.feasible) {
        out.feasible = false;
        return out;
    }
    out.value = sol.size;
    for (u32 s : sol.chosen) out.cert.parts.push_back(part_from_selection(f, pool[s]));
    // confirm minimality by exhausting the (value-1) search
    if (sol.size > 0) {
        solver::cover_solution tighter = solver::exact_set_cover(universe, sets, sol.size - 1);
        check_invariant(!tighter.feasible, "cover solver returned a non-minimal cover");
    }
    return out;
}

}  // namespace

cover_result cover_number_fixed(const truth_table& f, var_set A) {
    check_arg(f.is_boolean() && f.d() == 2, "cover numbers require boolean functions");
    solve_out s = solve_cover(f, {A}, ~0u);
    cover_result r{s.value, std::move(s.cert)};
    r.certificate.verify_against(f);
    return r;
}

cover_result cover_number_k(const truth_table& f, u32 k) {
    check_arg(f.is_boolean() && f.d() == 2, "cover numbers require boolean functions");
    check_arg(k >= 1 && k <= f.n(), "rectangle size out of range");
    if (f.n() > 10) throw resource_error("k-cover limited to 10 variables");
    std::vector<var_set> splits;
    for (u64 m : masks_of_size(f.n(), k)) splits.emplace_back(f.n(), m);
    solve_out s = solve_cover(f, splits, ~0u);
    cover_result r{s.value, std::move(s.cert)};
    r.certificate.verify_against(f);
    return r;
}

measure_report measure_C(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "C requires a boolean function");
    if (f.n() > 10) throw resource_error("C limited to 10 variables");
    measure_report rep;
    rep.measure = "C";
    u64 best_overall = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        std::vector<u64> masks = masks_of_size(f.n(), k);
        std::sort(masks.begin(), masks.end(), mask_lex_less);
        u64 inner = ~u64(0);
        u64 inner_mask = 0;
        for (u64 m : masks) {
            if (inner == 0) break;
            u32 cap = (inner == ~u64(0)) ? ~0u : static_cast<u32>(inner - 1);
            solve_out s = solve_cover(f, {var_set(f.n(), m)}, cap);
            if (s.feasible && s.value < inner) {
                inner = s.value;
                inner_mask = m;
            }
        }
        if (rep.witness_k == 0 || inner > best_overall) {
            best_overall = inner;
            rep.witness_k = k;
            rep.witness_A = inner_mask;
        }
    }
    rep.value = ratio(best_overall);
    cover_result win = cover_number_fixed(f, var_set(f.n(), rep.witness_A));
    check_invariant(win.value == best_overall, "C witness re-evaluation mismatch");
    rep.certificate = std::move(win.certificate);
    return rep;
}

measure_report measure_C_hat(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "C_hat requires a boolean function");
    if (f.n() > 10) throw resource_error("C_hat limited to 10 variables");
    measure_report rep;
    rep.measure = "Chat";
    u64 best = 0;
    std::optional<rect_certificate> cert;
    for (u32 k = 1; k <= f.n(); ++k) {
        cover_result r = cover_number_k(f, k);
        if (rep.witness_k == 0 || r.value > best) {
            best = r.value;
            rep.witness_k = k;
            cert = std::move(r.certificate);
        }
    }
    rep.value = ratio(best);
    rep.certificate = std::move(cert);
    // weak cover never exceeds the cover number
    measure_report full = measure_C(f);
    check_invariant(ratio(best) <= full.value, "C_hat exceeds C");
    return rep;
}

}  // namespace bpm
