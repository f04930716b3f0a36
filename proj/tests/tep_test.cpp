#include <doctest.h>

#include <random>

#include "bpm/subset_scan.hpp"
#include "bpm/tep.hpp"

using namespace bpm;
using namespace bpm::tep;

namespace {

// independent evaluator: explicit post-order worklist instead of recursion
u32 eval_iterative(u32 h, u32 k, std::span<const u32> a) {
    struct frame {
        u32 off, height, state;
        u32 vl = 0, vr = 0;
    };
    std::vector<frame> stack{{0, h, 0}};
    u32 result = 0;
    std::vector<u32> results;
    while (!stack.empty()) {
        frame& f = stack.back();
        if (f.height == 1) {
            results.push_back(a[f.off]);
            stack.pop_back();
            continue;
        }
        u32 kk = k * k;
        u32 sub = static_cast<u32>(layout::input_size(f.height - 1, k));
        if (f.state == 0) {
            f.state = 1;
            stack.push_back({f.off + kk, f.height - 1, 0});
        } else if (f.state == 1) {
            f.vl = results.back();
            results.pop_back();
            f.state = 2;
            stack.push_back({f.off + kk + sub, f.height - 1, 0});
        } else {
            f.vr = results.back();
            results.pop_back();
            results.push_back(a[f.off + f.vl * k + f.vr]);
            stack.pop_back();
        }
    }
    result = results.back();
    return result;
}

}  // namespace

TEST_CASE("layout sizes and the segment partition") {
    CHECK(layout::input_size(1, 2) == 1);
    CHECK(layout::input_size(2, 2) == 6);
    CHECK(layout::input_size(2, 3) == 11);
    CHECK(layout::input_size(3, 2) == 16);
    layout lay(3, 2);
    CHECK((lay.mask_M() | lay.mask_L() | lay.mask_R()) == (u64(1) << 16) - 1);
    CHECK((lay.mask_M() & lay.mask_L()) == 0);
    CHECK((lay.mask_L() & lay.mask_R()) == 0);
    CHECK(popcount64(lay.mask_M()) == 4);
    CHECK(popcount64(lay.mask_L()) == 6);
}

TEST_CASE("evaluation matches the definition") {
    // height 1: identity
    for (u32 v = 0; v < 3; ++v) {
        std::vector<u32> a{v};
        CHECK(tep_eval(1, 3, a) == v);
    }
    // height 2, k=2: M = [[1,2],[2,1]] leaves (1,2) -> M[1][2] = 2 (1-based)
    std::vector<u32> a{0, 1, 1, 0, 0, 1};
    CHECK(tep_eval(2, 2, a) == 1);  // symbol 2 is 1 zero-based
    // height 3, constant-1 matrices
    std::vector<u32> c(16, 0);
    CHECK(tep_eval(3, 2, c) == 0);
}

TEST_CASE("full tables cross-checked against the iterative evaluator") {
    truth_table t22 = tep_table(2, 2);
    CHECK(t22.size() == 64);
    std::vector<u32> point;
    for (u64 x = 0; x < t22.size(); ++x) {
        t22.decode(x, point);
        REQUIRE(t22.at(x) == eval_iterative(2, 2, point));
    }
    truth_table t23 = tep_table(2, 3);
    CHECK(t23.size() == 177147);
    std::mt19937_64 rng(5150);
    for (u32 i = 0; i < 1000; ++i) {
        u64 x = rng() % t23.size();
        t23.decode(x, point);
        REQUIRE(t23.at(x) == eval_iterative(2, 3, point));
    }
    truth_table t32 = tep_table(3, 2);
    CHECK(t32.size() == 65536);
    for (u32 i = 0; i < 1000; ++i) {
        u64 x = rng() % t32.size();
        t32.decode(x, point);
        REQUIRE(t32.at(x) == eval_iterative(3, 2, point));
    }
}

TEST_CASE("the (2,2) profile matches the closed forms with witnesses") {
    s_profile_result prof = s_tep_profile(2, 2);
    REQUIRE(prof.entries.size() == 6);
    std::vector<u64> want{2, 3, 4, 4, 3, 2};
    for (u32 i = 0; i < 6; ++i) {
        CHECK(prof.entries[i].s_value == want[i]);
        CHECK(prof.entries[i].complete);
        // the witness realizes the minimum
        truth_table t = tep_table(2, 2);
        CHECK(subset_stats(t, prof.entries[i].witness_mask).nrows == want[i]);
    }
    CHECK(prof.S == 4);
    CHECK(prof.argmax_ells == std::vector<u32>{3, 4});
}

TEST_CASE("subtree swap with root transpose preserves row counts at (2,2)") {
    layout lay(2, 2);
    truth_table t = tep_table(2, 2);
    for (u64 mask = 0; mask < 64; ++mask) {
        u64 mirrored = lay.mirror_mask(mask);
        CHECK(subset_stats(t, mask).nrows == subset_stats(t, mirrored).nrows);
        CHECK(subset_stats(t, mask).mult == subset_stats(t, mirrored).mult);
    }
}

TEST_CASE("S_hat at the desk-scale instances") {
    shat_result r1 = s_hat_tep(1, 4);
    CHECK(r1.value == ratio(4));  // the base case is exactly k
    shat_result r22 = s_hat_tep(2, 2);
    CHECK(ratio(2) <= r22.value);
    shat_result r23 = s_hat_tep(2, 3);
    CHECK(ratio(3) <= r23.value);
    CHECK(r23.upper_bound == ratio(8));  // (2^3/3) * 3
    CHECK_FALSE(r23.hypothesis_holds);   // h = 2 > log2 3
}

TEST_CASE("budgeted profiles mark unfinished groups") {
    s_profile_result prof = s_tep_profile(2, 2, {}, 1e-9);
    CHECK_FALSE(prof.all_complete);
    bool any_incomplete = false;
    for (const auto& e : prof.entries) any_incomplete = any_incomplete || !e.complete;
    CHECK(any_incomplete);
    // explicit ell filter
    s_profile_result part = s_tep_profile(2, 2, {3, 4});
    REQUIRE(part.entries.size() == 2);
    CHECK(part.entries[0].s_value == 4);
    CHECK(part.entries[1].s_value == 4);
}

TEST_CASE("appendix lemma battery at (2,2) and (2,3)") {
    for (auto [h, k] : {std::pair<u32, u32>{2, 2}, {2, 3}}) {
        auto checks = appendix_lemma_suite(h, k);
        for (const auto& c : checks) {
            INFO(c.name, " at h=", h, " k=", k, ": ", c.detail);
            CHECK(c.pass);
        }
    }
}
