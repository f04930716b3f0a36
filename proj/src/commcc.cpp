#include <algorithm>

#include "bpm/measures.hpp"
#include "grid.hpp"

namespace bpm {

namespace {

// Deduplicated boolean matrix: protocols factor through distinct rows/cols.
struct dedup_matrix {
    u32 r = 0, c = 0;
    std::vector<u32> row_pattern;  // per row, bit b = entry at column b

    explicit dedup_matrix(const grid::matrix_grid& g) {
        std::vector<std::vector<u32>> rows;
        for (u32 i = 0; i < g.rows; ++i) {
            std::vector<u32> row(g.cols);
            for (u32 j = 0; j < g.cols; ++j) row[j] = g.at(i, j);
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        // dedup columns of the reduced matrix
        std::vector<std::vector<u32>> cols;
        for (u32 j = 0; j < rows[0].size(); ++j) {
            std::vector<u32> col(rows.size());
            for (u32 i = 0; i < rows.size(); ++i) col[i] = rows[i][j];
            cols.push_back(std::move(col));
        }
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        r = static_cast<u32>(rows.size());
        c = static_cast<u32>(cols.size());
        check_arg(r + c <= 20, "communication matrix too large after deduplication");
        row_pattern.assign(r, 0);
        for (u32 i = 0; i < r; ++i)
            for (u32 j = 0; j < c; ++j)
                if (cols[j][i]) row_pattern[i] |= u32(1) << j;
    }
};

struct ccm_solver {
    const dedup_matrix& m;
    std::vector<u8> memo;  // (rmask << c) | cmask -> cost+1, 0 = unknown

    explicit ccm_solver(const dedup_matrix& mm) : m(mm) {
        memo.assign(u64(1) << (m.r + m.c), 0);
    }

    // -1 = not monochromatic, else the common value
    int mono(u32 rmask, u32 cmask) const {
        bool any0 = false, any1 = false;
        u32 rm = rmask;
        while (rm) {
            u32 i = static_cast<u32>(ctz64(rm));
            rm &= rm - 1;
            u32 onbits = m.row_pattern[i] & cmask;
            if (onbits) any1 = true;
            if (onbits != cmask) any0 = true;
            if (any0 && any1) return -1;
        }
        return any1 ? 1 : 0;
    }

    u32 cost(u32 rmask, u32 cmask) {
        u64 key = (u64(rmask) << m.c) | cmask;
        if (memo[key]) return memo[key] - 1;
        u32 res;
        if (mono(rmask, cmask) >= 0) {
            res = 0;
        } else {
            res = ~0u;
            // row player's bit: submasks that keep the lowest row
            u32 low = rmask & (~rmask + 1);
            for (u32 s = (rmask - 1) & rmask; s; s = (s - 1) & rmask) {
                if (!(s & low)) continue;
                if (s == rmask) continue;
                u32 v = 1 + std::max(cost(s, cmask), cost(rmask & ~s, cmask));
                res = std::min(res, v);
            }
            u32 lowc = cmask & (~cmask + 1);
            for (u32 s = (cmask - 1) & cmask; s; s = (s - 1) & cmask) {
                if (!(s & lowc)) continue;
                if (s == cmask) continue;
                u32 v = 1 + std::max(cost(rmask, s), cost(rmask, cmask & ~s));
                res = std::min(res, v);
            }
        }
        memo[key] = static_cast<u8>(res + 1);
        return res;
    }

    protocol_node build(u32 rmask, u32 cmask) {
        protocol_node node;
        int mv = mono(rmask, cmask);
        if (mv >= 0) {
            node.leaf = true;
            node.leaf_value = static_cast<u32>(mv);
            return node;
        }
        u32 target = cost(rmask, cmask);
        u32 low = rmask & (~rmask + 1);
        for (u32 s = (rmask - 1) & rmask; s; s = (s - 1) & rmask) {
            if (!(s & low) || s == rmask) continue;
            if (1 + std::max(cost(s, cmask), cost(rmask & ~s, cmask)) == target) {
                node.rows_speak = true;
                node.half0 = s;
                node.half1 = rmask & ~s;
                node.kids.push_back(build(s, cmask));
                node.kids.push_back(build(rmask & ~s, cmask));
                return node;
            }
        }
        u32 lowc = cmask & (~cmask + 1);
        for (u32 s = (cmask - 1) & cmask; s; s = (s - 1) & cmask) {
            if (!(s & lowc) || s == cmask) continue;
            if (1 + std::max(cost(rmask, s), cost(rmask, cmask & ~s)) == target) {
                node.rows_speak = false;
                node.half0 = s;
                node.half1 = cmask & ~s;
                node.kids.push_back(build(rmask, s));
                node.kids.push_back(build(rmask, cmask & ~s));
                return node;
            }
        }
        throw invariant_error("ccm: no split matches the memoized cost");
    }
};

u32 ccm_cost_only(const truth_table& f, var_set A) {
    dedup_matrix m(grid::extract_grid(f, A));
    ccm_solver solver(m);
    return solver.cost((u32(1) << m.r) - 1, (u32(1) << m.c) - 1);
}

}  // namespace

ccm_result ccm(const truth_table& f, var_set A) {
    check_arg(f.is_boolean() && f.d() == 2, "ccm needs a boolean matrix");
    dedup_matrix m(grid::extract_grid(f, A));
    ccm_solver solver(m);
    u32 full_r = (u32(1) << m.r) - 1;
    u32 full_c = (u32(1) << m.c) - 1;
    ccm_result res;
    res.cost = solver.cost(full_r, full_c);
    res.root = solver.build(full_r, full_c);
    return res;
}

u64 nccm_count(const truth_table& f, var_set A) {
    return cover_number_fixed(f, A).value;
}

measure_report measure_CC(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "CC requires a boolean function");
    if (f.n() > 6) throw resource_error("CC limited to 6 variables");
    measure_report rep;
    rep.measure = "CC";
    u64 best = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        std::vector<u64> masks = masks_of_size(f.n(), k);
        std::sort(masks.begin(), masks.end(), mask_lex_less);
        u64 inner = ~u64(0);
        u64 inner_mask = 0;
        for (u64 m : masks) {
            u32 c = ccm_cost_only(f, var_set(f.n(), m));
            if (c < inner) {
                inner = c;
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
    check_invariant(2 * best <= f.n() + 2, "CC exceeds n/2 + 1");
    return rep;
}

measure_report measure_NCC(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "NCC requires a boolean function");
    if (f.n() > 8) throw resource_error("NCC limited to 8 variables");
    measure_report rep;
    rep.measure = "NCC";
    u64 best = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        std::vector<u64> masks = masks_of_size(f.n(), k);
        std::sort(masks.begin(), masks.end(), mask_lex_less);
        u64 inner = ~u64(0);
        u64 inner_mask = 0;
        for (u64 m : masks) {
            u64 c = nccm_count(f, var_set(f.n(), m));
            if (c < inner) {
                inner = c;
                inner_mask = m;
            }
        }
        if (rep.witness_k == 0 || inner > best) {
            best = inner;
            rep.witness_k = k;
            rep.witness_A = inner_mask;
        }
    }
    rep.value = ratio(best);  // the integer whose log2 is NCC
    return rep;
}

}  // namespace bpm
