#pragma once

// Matrix extraction and maximal-rectangle enumeration used by the cover and
// partition measures. Internal.

#include <vector>

#include "bpm/measures.hpp"
#include "solver.hpp"

namespace bpm::grid {

// f_A as an explicit grid with global point indices alongside.
struct matrix_grid {
    u32 rows = 0, cols = 0;
    std::vector<u32> vals;    // rows x cols, row-major
    std::vector<u64> global;  // same shape: global table index of each cell

    u32 at(u32 r, u32 c) const { return vals[u64(r) * cols + c]; }
    u64 point(u32 r, u32 c) const { return global[u64(r) * cols + c]; }
};

matrix_grid extract_grid(const truth_table& f, var_set A);
matrix_grid transpose(const matrix_grid& g);

// Maximal all-ones combinatorial rectangles of a boolean matrix, as
// (row mask bitset, column mask u64). Requires cols <= 64.
struct max_rect {
    solver::bitset rows;
    u64 cols = 0;
};
std::vector<max_rect> maximal_one_rectangles(const matrix_grid& g, u64 pool_budget = 200'000);

// Certificate part from row/column selections of a grid.
rect_part make_part(const truth_table& f, var_set A, const std::vector<u8>& row_sel,
                    const std::vector<u32>& col_val);

}  // namespace bpm::grid
