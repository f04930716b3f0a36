#include <doctest.h>

#include <random>
#include <sstream>

#include "bpm/subset_scan.hpp"
#include "bpm/truth_table.hpp"

using namespace bpm;

namespace {

truth_table parity(u32 n) {
    return build_table(n, 2, [](std::span<const u32> p) {
        u32 s = 0;
        for (u32 b : p) s ^= b;
        return s;
    });
}

truth_table eq2() {
    return build_table(4, 2, [](std::span<const u32> p) -> u32 {
        return (p[0] == p[2] && p[1] == p[3]) ? 1 : 0;
    });
}

truth_table random_tt(u32 n, u32 d, std::mt19937_64& rng) {
    u64 sz = 1;
    for (u32 i = 0; i < n; ++i) sz *= d;
    std::vector<u32> vals(sz);
    for (auto& v : vals) v = static_cast<u32>(rng() % d);
    return truth_table(n, d, std::move(vals));
}

// quadratic oracle for row statistics
row_stats_t row_stats_oracle(const truth_table& f, var_set A) {
    split_view v(f, A);
    std::vector<std::vector<u32>> rows(v.rows());
    for (u64 a = 0; a < v.rows(); ++a) v.extract_row(a, rows[a]);
    row_stats_t st;
    std::vector<bool> counted(v.rows(), false);
    for (u64 a = 0; a < v.rows(); ++a) {
        if (counted[a]) continue;
        u64 run = 0;
        for (u64 b = a; b < v.rows(); ++b)
            if (rows[b] == rows[a]) {
                counted[b] = true;
                ++run;
            }
        ++st.nrows;
        st.mult = std::max(st.mult, run);
    }
    return st;
}

}  // namespace

TEST_CASE("build_table fills in canonical order") {
    truth_table id1 = build_table(1, 2, [](std::span<const u32> p) { return p[0]; });
    CHECK(id1.values() == std::vector<u32>{0, 1});
    truth_table x2 = build_table(2, 2, [](std::span<const u32> p) { return p[0] ^ p[1]; });
    CHECK(x2.values() == std::vector<u32>{0, 1, 1, 0});
    // the height-1 tree evaluation is the identity on [k]
    truth_table t3 = build_table(1, 3, [](std::span<const u32> p) { return p[0]; });
    CHECK(t3.values() == std::vector<u32>{0, 1, 2});
    CHECK(t3.range() == range_kind::natural);
    CHECK(x2.is_boolean());
}

TEST_CASE("build_table enforces the cell budget") {
    u64 save = cell_budget();
    set_cell_budget(100);
    CHECK_THROWS_AS(build_table(10, 2, [](std::span<const u32>) { return 0u; }), resource_error);
    set_cell_budget(save);
}

TEST_CASE("split of EQ_2 on the first half is the identity matrix") {
    truth_table f = eq2();
    split_view v = split(f, var_set::from_indices(4, {1, 2}));
    REQUIRE(v.rows() == 4);
    REQUIRE(v.cols() == 4);
    for (u64 a = 0; a < 4; ++a)
        for (u64 b = 0; b < 4; ++b) CHECK(v.entry(a, b) == (a == b ? 1 : 0));
}

TEST_CASE("split with an empty A is the single-row view") {
    truth_table f = parity(3);
    split_view v = split(f, var_set(3, 0));
    REQUIRE(v.rows() == 1);
    REQUIRE(v.cols() == 8);
    std::vector<u32> row;
    v.extract_row(0, row);
    CHECK(row == f.values());
}

TEST_CASE("parity rows under a one-variable split are complements") {
    truth_table f = parity(3);
    split_view v = split(f, var_set::from_indices(3, {1}));
    std::vector<u32> r0, r1;
    v.extract_row(0, r0);
    v.extract_row(1, r1);
    REQUIRE(r0.size() == 4);
    for (u32 i = 0; i < 4; ++i) CHECK(r0[i] == 1 - r1[i]);
}

TEST_CASE("subfunctions of parity") {
    truth_table f = parity(3);
    truth_table s0 = subfunction(f, var_set::from_indices(3, {1}), 0);
    truth_table s1 = subfunction(f, var_set::from_indices(3, {1}), 1);
    CHECK(s0 == parity(2));
    truth_table np2 = combine(combine_op::negate, parity(2));
    CHECK(s1 == np2);
    CHECK_THROWS_AS(subfunction(f, var_set::from_indices(3, {1}), 2), argument_error);
}

TEST_CASE("round-trip: subfunctions reassemble the table") {
    std::mt19937_64 rng(7);
    for (u32 n : {3u, 4u}) {
        truth_table f = random_tt(n, 2, rng);
        for (u64 mask = 1; mask < (u64(1) << n); ++mask) {
            var_set A(n, mask);
            split_view v = split(f, A);
            for (u64 a = 0; a < v.rows(); ++a) {
                truth_table sub = subfunction(f, A, a);
                for (u64 b = 0; b < v.cols(); ++b) {
                    CHECK(sub.at(b) == v.entry(a, b));
                    CHECK(f.at(v.global_index(a, b)) == sub.at(b));
                }
            }
        }
    }
}

TEST_CASE("row_stats spec examples") {
    row_stats_t st = row_stats(parity(4), var_set::from_indices(4, {1, 2}));
    CHECK(st.nrows == 2);
    CHECK(st.mult == 2);
    st = row_stats(eq2(), var_set::from_indices(4, {1, 2}));
    CHECK(st.nrows == 4);
    CHECK(st.mult == 1);
    truth_table zero(3, 2, std::vector<u32>(8, 0));
    st = row_stats(zero, var_set::from_indices(3, {1}));
    CHECK(st.nrows == 1);
    CHECK(st.mult == 2);
}

TEST_CASE("row_stats agrees with the quadratic oracle and the fast kernel") {
    std::mt19937_64 rng(99);
    for (u32 round = 0; round < 30; ++round) {
        u32 d = (round % 2) ? 3 : 2;
        u32 n = 3 + round % 3;
        truth_table f = random_tt(n, d, rng);
        for (u64 mask = 0; mask < (u64(1) << n); ++mask) {
            row_stats_t a = row_stats(f, var_set(n, mask));
            row_stats_t b = row_stats_oracle(f, var_set(n, mask));
            row_stats_t c = subset_stats(f, mask);
            CHECK(a.nrows == b.nrows);
            CHECK(a.mult == b.mult);
            CHECK(c.nrows == b.nrows);
            CHECK(c.mult == b.mult);
            // general row-count facts
            u64 rows = 1;
            for (int i = 0; i < popcount64(mask); ++i) rows *= d;
            CHECK(a.nrows + a.mult <= rows + 1);
            CHECK(a.nrows * a.mult >= rows);
            CHECK((a.nrows == 1) == (a.mult == rows));
        }
    }
}

TEST_CASE("scan_all_subsets matches per-mask stats and is thread independent") {
    std::mt19937_64 rng(1234);
    truth_table f = random_tt(9, 2, rng);
    u32 saved = worker_threads();
    set_worker_threads(1);
    subset_scan_result one = scan_all_subsets(f);
    set_worker_threads(4);
    subset_scan_result four = scan_all_subsets(f);
    set_worker_threads(saved);
    CHECK(one.nrows == four.nrows);
    CHECK(one.mult == four.mult);
    for (u64 mask = 0; mask < 512; mask += 37) {
        row_stats_t st = row_stats(f, var_set(9, mask));
        CHECK(one.nrows[mask] == st.nrows);
        CHECK(one.mult[mask] == st.mult);
    }
}

TEST_CASE("is_rectangle spec examples") {
    // interleaved split of EQ_2: A' = {1, 3} pairs (x1,y1)
    truth_table f = eq2();
    rectangle_witness w = is_rectangle(f, var_set::from_indices(4, {1, 3}));
    CHECK(w.is_rectangle);
    // reconstructs every entry
    split_view v = split(f, var_set::from_indices(4, {1, 3}));
    for (u64 a = 0; a < v.rows(); ++a)
        for (u64 b = 0; b < v.cols(); ++b) CHECK(v.entry(a, b) == w.g[a] * w.h[b]);

    truth_table one(3, 2, std::vector<u32>(8, 1));
    rectangle_witness w1 = is_rectangle(one, var_set::from_indices(3, {2}));
    CHECK(w1.is_rectangle);

    // identity 2x2 is not a rectangle; cross-check by exhausting g, h
    truth_table eq1 = build_table(2, 2, [](std::span<const u32> p) -> u32 {
        return p[0] == p[1] ? 1 : 0;
    });
    rectangle_witness w2 = is_rectangle(eq1, var_set::from_indices(2, {1}));
    CHECK_FALSE(w2.is_rectangle);
    bool any = false;
    for (u32 g = 0; g < 4 && !any; ++g)
        for (u32 h0 = 0; h0 < 2 && !any; ++h0)
            for (u32 h1 = 0; h1 < 2 && !any; ++h1) {
                bool all = true;
                split_view vv = split(eq1, var_set::from_indices(2, {1}));
                for (u64 a = 0; a < 2; ++a)
                    for (u64 b = 0; b < 2; ++b)
                        if (vv.entry(a, b) != ((g >> a) & 1) * (b ? h1 : h0)) all = false;
                any = all;
            }
    CHECK_FALSE(any);
}

TEST_CASE("combine and orthogonality") {
    truth_table p2 = parity(2);
    CHECK(combine(combine_op::negate, p2).values() == std::vector<u32>{1, 0, 0, 1});
    truth_table x1 = build_table(2, 2, [](std::span<const u32> p) { return p[0]; });
    truth_table x2 = build_table(2, 2, [](std::span<const u32> p) { return p[1]; });
    CHECK(combine(combine_op::op_and, x1, x2).values() == std::vector<u32>{0, 0, 0, 1});
    truth_table a(2, 2, {1, 0, 0, 0});
    truth_table b(2, 2, {0, 0, 0, 1});
    CHECK(orthogonal(a, b));
    truth_table prod = combine(combine_op::product, a, b);
    CHECK(prod.is_constant());
    CHECK(prod.at(0) == 0);
    CHECK_THROWS_AS(combine(combine_op::op_and, a, parity(3)), argument_error);
}

TEST_CASE("truth-table file format round-trips bit-exactly") {
    std::mt19937_64 rng(5);
    truth_table f = random_tt(4, 3, rng);
    std::string text = tt_to_string(f);
    truth_table g = tt_from_string(text);
    CHECK(f == g);
    CHECK(tt_to_string(g) == text);
    // canonical header
    CHECK(text.substr(0, 9) == "TT 4 3 na");
    CHECK_THROWS_AS(tt_from_string("XX 1 2 bool 0 1"), argument_error);
    CHECK_THROWS_AS(tt_from_string("TT 1 2 bool 0"), argument_error);
    CHECK_THROWS_AS(tt_from_string("TT 1 2 bool 0 7"), argument_error);
}

TEST_CASE("variable-set mask ordering is by sorted index lists") {
    CHECK(mask_lex_less(indices_to_mask({1, 4}, 4), indices_to_mask({2, 3}, 4)));
    CHECK_FALSE(mask_lex_less(indices_to_mask({2, 3}, 4), indices_to_mask({1, 4}, 4)));
    CHECK(mask_lex_less(indices_to_mask({1, 2}, 4), indices_to_mask({1, 3}, 4)));
    CHECK_FALSE(mask_lex_less(5, 5));
}

TEST_CASE("depends_on and is_constant") {
    truth_table f = build_table(3, 2, [](std::span<const u32> p) { return p[0] & p[2]; });
    CHECK(f.depends_on(1));
    CHECK_FALSE(f.depends_on(2));
    CHECK(f.depends_on(3));
    CHECK_FALSE(f.is_constant());
    truth_table c(2, 2, std::vector<u32>(4, 1));
    CHECK(c.is_constant());
}
