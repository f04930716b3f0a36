#pragma once

#include "bpm/truth_table.hpp"

namespace bpm::geom {

// Affine plane over F_p with the p^2 non-vertical lines l_(i,j) = {(t, i+jt)}.
// Point (a,b) occupies bit a*p + b of a point-set mask; masks require p <= 7.
struct plane {
    u32 p = 0;
    u32 npoints = 0;                          // p^2
    std::vector<std::vector<u32>> line_pts;   // per line (i,j) at index i*p+j
    std::vector<u64> line_mask;               // only when p <= 7
    bool has_masks = false;

    u32 point_bit(u32 a, u32 b) const { return a * p + b; }
    u32 line_index(u32 i, u32 j) const { return i * p + j; }
    u64 vertical_mask(u32 column) const;
    u64 nonvertical_mask(u32 i, u32 j) const;
};

plane make_plane(u32 p);  // verifies p prime, p-regularity and K_{2,2}-freeness

bool is_blocking(const plane& pl, u64 S);
// Independent route: the product polynomial vanishing on all of F_p^2.
bool is_blocking_poly(const plane& pl, u64 S);
bool is_minimal_blocking(const plane& pl, u64 S);

struct mbs_enumeration {
    std::vector<u64> sets;            // every MBS of size <= max_size
    std::vector<u64> count_by_size;   // histogram, index = size
};
mbs_enumeration enumerate_mbs(const plane& pl, u32 max_size);

// Theorem-style constructors, cases 3..7. Parameters are validated against
// each case's side conditions; the result is checked minimal blocking and of
// the advertised size before being returned.
u64 mbs_case3(const plane& pl, u32 l1, u32 l2, u32 x_point);
u64 mbs_case4(const plane& pl, u32 l1, u32 l2);
u64 mbs_case5(const plane& pl, u32 l, const std::vector<u32>& pts);
u64 mbs_case6(const plane& pl, u32 l1, u32 l2, u32 x_point, u32 y_point, u32 a_point,
              u32 b_point, u32 c_point);
u64 mbs_case7(const plane& pl, u32 column, u32 i2, u32 i3, u32 j);

// First non-degenerate case-6 parameter tuple (the printed side conditions
// admit degenerate choices); returns 0 when no instance exists.
u64 search_case6(const plane& pl);

struct blocking_count {
    bool exact = false;
    u64 total_subsets = 0;
    u64 blocking = 0;        // exact mode
    double estimate = 0.0;   // sample mode: estimated count
    double ci_low = 0.0, ci_high = 0.0;
    u64 samples = 0;
};
blocking_count count_blocking_within(const plane& pl, u64 M, bool exact, u64 samples = 0,
                                     u64 seed = 1);

truth_table gal_table(const plane& pl);  // p^2 variables
truth_table bw_table(const plane& pl);   // 2 p^2 variables: points then lines

// Thm 5.4 witness set: T = first t points of the column-0 vertical line
// together with all their lines, as a variable mask of the BW table.
u64 bw_witness_mask(const plane& pl, u32 t);

bool lemma_identity_check(u32 p);            // p <= 11
bool intersecting_points_check(u32 p);       // p <= 5

}  // namespace bpm::geom
