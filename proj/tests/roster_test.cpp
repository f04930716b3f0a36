#include <doctest.h>

#include "bpm/measures.hpp"
#include "bpm/roster.hpp"

using namespace bpm;
using namespace bpm::roster;

namespace {

// exhaustively compare a generated table with its reference evaluator
template <typename Ref>
void agree(const truth_table& t, Ref&& ref) {
    std::vector<u32> point;
    for (u64 x = 0; x < t.size(); ++x) {
        t.decode(x, point);
        REQUIRE(t.at(x) == ref(std::span<const u32>(point)));
    }
}

}  // namespace

TEST_CASE("EQ") {
    truth_table t = gen_eq(1);
    CHECK(t.values() == std::vector<u32>{1, 0, 0, 1});
    agree(gen_eq(2), [](std::span<const u32> p) { return ref_eq(2, p); });
    // x = 01, y = 01
    std::vector<u32> pt{0, 1, 0, 1};
    CHECK(gen_eq(2).eval(pt) == 1);
}

TEST_CASE("SEQ") {
    truth_table t = gen_seq(2);
    agree(t, [](std::span<const u32> p) { return ref_seq(2, p); });
    agree(gen_seq(3), [](std::span<const u32> p) { return ref_seq(3, p); });
    // i=1 (encoding 0): plain equality
    CHECK(t.eval(std::vector<u32>{1, 0, 1, 0, 0}) == 1);
    // i=2 (encoding 1): x=10 y=01 match, x=10 y=10 not
    CHECK(t.eval(std::vector<u32>{1, 0, 0, 1, 1}) == 1);
    CHECK(t.eval(std::vector<u32>{1, 0, 1, 0, 1}) == 0);
    // SEQ with i=1 equals EQ on the (x,y) subcube
    truth_table eq = gen_eq(2);
    for (u64 xy = 0; xy < 16; ++xy) CHECK(t.at(xy << 1) == eq.at(xy));
}

TEST_CASE("PARITY") {
    agree(gen_parity(3), [](std::span<const u32> p) { return ref_parity(3, p); });
    CHECK(gen_parity(3).eval(std::vector<u32>{1, 0, 1}) == 0);
}

TEST_CASE("clique") {
    truth_table t = gen_clique(4);
    agree(t, [](std::span<const u32> p) { return ref_clique(4, p); });
    // exactly the edge {1,2}: a 2-clique plus two isolated vertices
    std::vector<u32> pt(6, 0);
    pt[0] = 1;
    CHECK(t.eval(pt) == 1);
    pt[1] = 1;
    CHECK(t.eval(pt) == 0);
    agree(gen_clique(5), [](std::span<const u32> p) { return ref_clique(5, p); });
}

TEST_CASE("pointer") {
    truth_table t = gen_pointer(16);
    agree(t, [](std::span<const u32> p) { return ref_pointer(16, p); });
    CHECK_THROWS_AS(gen_pointer(8), argument_error);    // log n does not divide n
    CHECK_THROWS_AS(gen_pointer(4), argument_error);    // 2-bit blocks are not square
    CHECK_THROWS_AS(gen_pointer(256), argument_error);  // 32-bit blocks are not square
}

TEST_CASE("ISA") {
    agree(gen_isa(4), [](std::span<const u32> p) { return ref_isa(4, p); });
    agree(gen_isa(8), [](std::span<const u32> p) { return ref_isa(8, p); });
    CHECK_THROWS_AS(gen_isa(6), argument_error);
}

TEST_CASE("NAND tree") {
    truth_table t = gen_nand(4);
    agree(t, [](std::span<const u32> p) { return ref_nand(4, p); });
    CHECK(t.eval(std::vector<u32>{1, 1, 0, 0}) == 1);
    agree(gen_nand(8), [](std::span<const u32> p) { return ref_nand(8, p); });
    CHECK_THROWS_AS(gen_nand(3), argument_error);
}

TEST_CASE("BRS") {
    truth_table t0 = gen_brs(0);
    agree(t0, [](std::span<const u32> p) { return ref_brs(0, p); });
    // x = (0,0), any y: the whole sum vanishes
    CHECK(t0.eval(std::vector<u32>{0, 0, 1, 0}) == 1);
    CHECK(t0.eval(std::vector<u32>{0, 0, 1, 1}) == 1);
    // x=(1,0), y=(1,0): sum = 1; x=(1,1), y=(1,0): sum = 2
    CHECK(t0.eval(std::vector<u32>{1, 0, 1, 0}) == 0);
    CHECK(t0.eval(std::vector<u32>{1, 1, 1, 0}) == 0);
    agree(gen_brs(1), [](std::span<const u32> p) { return ref_brs(1, p); });
    agree(gen_brs(2), [](std::span<const u32> p) { return ref_brs(2, p); });
}

TEST_CASE("product with parity") {
    truth_table one(2, 2, std::vector<u32>(4, 1));
    truth_table f = product_with_parity(one);
    // equals parity on the y half
    for (u64 x = 0; x < 16; ++x) {
        u32 y = x & 3;
        u32 par = ((y >> 1) ^ y) & 1;
        CHECK(f.at(x) == par);
    }
    truth_table and2 = build_table(2, 2, [](std::span<const u32> p) { return p[0] & p[1]; });
    truth_table g = product_with_parity(and2);
    CHECK(g.eval(std::vector<u32>{1, 1, 0, 1}) == 1);
}
