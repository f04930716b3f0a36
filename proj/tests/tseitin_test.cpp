#include <doctest.h>

#include <sstream>

#include "bpm/tseitin.hpp"

using namespace bpm;
using namespace bpm::tseitin;

namespace {

graph k3() { return {3, {{1, 2}, {2, 3}, {1, 3}}}; }
graph c4() { return {4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}}; }

}  // namespace

TEST_CASE("tables of the anchor instances") {
    instance i{k3(), {0, 0, 0}};
    truth_table t = tseitin_table(i);
    std::vector<u64> sat;
    for (u64 x = 0; x < 8; ++x)
        if (t.at(x)) sat.push_back(x);
    CHECK(sat == std::vector<u64>{0, 7});  // 000 and 111

    instance edge{{2, {{1, 2}}}, {1, 1}};
    truth_table te = tseitin_table(edge);
    CHECK(te.values() == std::vector<u32>{0, 1});

    instance odd{k3(), {1, 0, 0}};
    truth_table to = tseitin_table(odd);
    CHECK(to.is_constant());
    CHECK(to.at(0) == 0);
}

TEST_CASE("satisfying counts match the component identity") {
    CHECK(count_sat({k3(), {0, 0, 0}}) == 2);
    CHECK(count_sat({c4(), {0, 0, 0, 0}}) == 2);
    graph two_edges{4, {{1, 2}, {3, 4}}};
    CHECK(count_sat({two_edges, {0, 0, 0, 0}}) == 1);
    CHECK(count_sat({k3(), {1, 0, 0}}) == 0);
}

TEST_CASE("kappa profiles") {
    graph path3{3, {{1, 2}, {2, 3}}};
    kappa_profile_t prof = kappa_profile(path3);
    CHECK(prof.kappa[0] == 3);
    CHECK(prof.kappa[1] == 2);
    CHECK(prof.kappa[2] == 1);
    prof = kappa_profile(c4());
    CHECK(prof.kappa[0] == 4);
    CHECK(prof.kappa[2] == 2);
    CHECK(prof.kappa[4] == 1);
}

TEST_CASE("the lower bound and its cross-check") {
    bound_result b = tseitin_bound({c4(), {0, 0, 0, 0}});
    CHECK(b.value == 2);
    b = tseitin_bound({k3(), {0, 0, 0}});
    CHECK(b.value == 2);
    bound_result be = tseitin_bound({{2, {{1, 2}}}, {1, 1}});
    CHECK(be.value == 1);
    CHECK_THROWS_AS(tseitin_bound({k3(), {1, 0, 0}}), argument_error);

    crosscheck_result cc = crosscheck_chat({c4(), {0, 0, 0, 0}});
    CHECK(cc.holds);
    CHECK(cc.bound == 2);
    CHECK(cc.c_hat == 2);
    cc = crosscheck_chat({{2, {{1, 2}}}, {1, 1}});
    CHECK(cc.bound == 1);
    CHECK(cc.c_hat == 1);
}

TEST_CASE("file formats and validation") {
    std::istringstream gs("3 2\n1 2\n2 3\n");
    graph g = read_graph(gs);
    CHECK(g.n == 3);
    CHECK(g.m() == 2);
    std::istringstream cs("1 0 1\n");
    std::vector<u8> charge = read_charge(cs, 3);
    CHECK(charge == std::vector<u8>{1, 0, 1});

    std::istringstream bad1("2 1\n1 1\n");
    CHECK_THROWS_AS(read_graph(bad1), argument_error);  // self loop
    std::istringstream bad2("2 2\n1 2\n2 1\n");
    CHECK_THROWS_AS(read_graph(bad2), argument_error);  // parallel edge
    std::istringstream bad3("2 1\n1 5\n");
    CHECK_THROWS_AS(read_graph(bad3), argument_error);  // endpoint range
}
