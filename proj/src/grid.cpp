#include "grid.hpp"

#include <algorithm>
#include <unordered_set>

namespace bpm::grid {

matrix_grid extract_grid(const truth_table& f, var_set A) {
    split_view v(f, A);
    check_arg(v.rows() <= (u64(1) << 20) && v.cols() <= (u64(1) << 20),
              "split too large for explicit grid");
    matrix_grid g;
    g.rows = static_cast<u32>(v.rows());
    g.cols = static_cast<u32>(v.cols());
    g.vals.resize(u64(g.rows) * g.cols);
    g.global.resize(u64(g.rows) * g.cols);
    for (u32 r = 0; r < g.rows; ++r)
        for (u32 c = 0; c < g.cols; ++c) {
            g.vals[u64(r) * g.cols + c] = v.entry(r, c);
            g.global[u64(r) * g.cols + c] = v.global_index(r, c);
        }
    return g;
}

matrix_grid transpose(const matrix_grid& g) {
    matrix_grid t;
    t.rows = g.cols;
    t.cols = g.rows;
    t.vals.resize(u64(t.rows) * t.cols);
    t.global.resize(u64(t.rows) * t.cols);
    for (u32 r = 0; r < g.rows; ++r)
        for (u32 c = 0; c < g.cols; ++c) {
            t.vals[u64(c) * t.cols + r] = g.at(r, c);
            t.global[u64(c) * t.cols + r] = g.point(r, c);
        }
    return t;
}

std::vector<max_rect> maximal_one_rectangles(const matrix_grid& g, u64 pool_budget) {
    check_arg(g.cols <= 64, "maximal rectangle enumeration requires <= 64 columns");
    std::vector<u64> pattern(g.rows, 0);
    for (u32 r = 0; r < g.rows; ++r)
        for (u32 c = 0; c < g.cols; ++c)
            if (g.at(r, c)) pattern[r] |= u64(1) << c;

    // close the distinct nonzero row patterns under intersection
    std::unordered_set<u64> closed;
    for (u64 p : pattern)
        if (p) closed.insert(p);
    std::vector<u64> work(closed.begin(), closed.end());
    for (size_t i = 0; i < work.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            u64 q = work[i] & work[j];
            if (q && closed.insert(q).second) work.push_back(q);
        }
        if (work.size() > pool_budget)
            throw resource_error("rectangle pool exceeded " + std::to_string(pool_budget));
    }

    std::vector<max_rect> out;
    for (u64 q : work) {
        // rows covering q, then re-derive the column closure
        u64 qq = ~u64(0);
        solver::bitset rows(g.rows);
        bool any = false;
        for (u32 r = 0; r < g.rows; ++r)
            if ((pattern[r] & q) == q) {
                rows.set(r);
                qq &= pattern[r];
                any = true;
            }
        if (!any) continue;
        if (qq != q) continue;  // not column-closed; appears elsewhere
        out.push_back({std::move(rows), q});
    }
    std::sort(out.begin(), out.end(), [](const max_rect& a, const max_rect& b) {
        if (a.cols != b.cols) return a.cols < b.cols;
        return a.rows.w < b.rows.w;
    });
    return out;
}

rect_part make_part(const truth_table& f, var_set A, const std::vector<u8>& row_sel,
                    const std::vector<u32>& col_val) {
    std::vector<u32> gv(row_sel.begin(), row_sel.end());
    std::vector<u32> hv(col_val.begin(), col_val.end());
    return rect_part{A, truth_table(A.count(), f.d(), std::move(gv)),
                     truth_table(f.n() - A.count(), f.d(), std::move(hv))};
}

}  // namespace bpm::grid
