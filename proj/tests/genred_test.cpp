#include <doctest.h>

#include <random>
#include <sstream>

#include "bpm/genred.hpp"
#include "bpm/roster.hpp"

using namespace bpm;
using namespace bpm::genred;

namespace {

gen_table table3(u32 x11, u32 x12, u32 x22) {
    gen_table t;
    t.m = 3;
    t.entries = {x11, x12, x22};
    return t;
}

// independent closure oracle: iterate a full product pass m times
bool gen_eval_oracle(const gen_table& t) {
    std::vector<u8> in(t.m + 1, 0);
    in[1] = 1;
    bool seeded = false;
    for (u32 round = 0; round <= t.m + 1; ++round) {
        std::vector<u8> next = in;
        if (!seeded) {
            next[t.at(1, 1)] = 1;
            seeded = true;
        }
        for (u32 i = 1; i <= t.m - 1; ++i)
            for (u32 j = i; j <= t.m - 1; ++j)
                if (in[i] && in[j]) next[t.at(i, j)] = 1;
        in = std::move(next);
    }
    return in[t.m];
}

circuit and_circuit() {
    circuit c;
    c.n_inputs = 2;
    c.gates = {{circuit::op::input, 1, 0},
               {circuit::op::input, 2, 0},
               {circuit::op::and_gate, 0, 1}};
    c.output = 2;
    return c;
}

}  // namespace

TEST_CASE("gen_eval anchors and the closure oracle") {
    gen_table t2;
    t2.m = 2;
    t2.entries = {2};
    CHECK(gen_eval(t2));
    t2.entries = {1};
    CHECK_FALSE(gen_eval(t2));
    CHECK(gen_eval(table3(2, 3, 1)));
    CHECK_FALSE(gen_eval(table3(1, 3, 2)));  // 1*1 = 1 generates nothing new

    std::mt19937_64 rng(11);
    for (u32 round = 0; round < 500; ++round) {
        gen_table t;
        t.m = 2 + rng() % 5;
        t.entries.resize(gen_table::cell_count(t.m));
        for (auto& e : t.entries) e = 1 + rng() % t.m;
        REQUIRE(gen_eval(t) == gen_eval_oracle(t));
    }
}

TEST_CASE("circuit parsing, evaluation, and printing") {
    std::istringstream is(
        "g1 INPUT 1\ng2 INPUT 2\ng3 AND g1 g2\ng4 NOT g3\ng4\n");
    circuit c = parse_circuit(is);
    CHECK(c.n_inputs == 2);
    CHECK(c.gate_count() == 2);
    CHECK(c.eval(std::vector<u32>{1, 1}) == 0);
    CHECK(c.eval(std::vector<u32>{0, 1}) == 1);
    // printing re-parses to the same behavior
    std::istringstream round(circuit_to_string(c));
    circuit c2 = parse_circuit(round);
    for (u64 x = 0; x < 4; ++x) {
        std::vector<u32> xs{static_cast<u32>(x >> 1), static_cast<u32>(x & 1)};
        CHECK(c.eval(xs) == c2.eval(xs));
    }
    std::istringstream bad("g1 NOT g9\ng1\n");
    CHECK_THROWS_AS(parse_circuit(bad), argument_error);
    std::istringstream bad2("g1 FROB 1\ng1\n");
    CHECK_THROWS_AS(parse_circuit(bad2), argument_error);
}

TEST_CASE("NAND tree agrees with the roster table") {
    std::istringstream is(
        "g1 INPUT 1\ng2 INPUT 2\ng3 INPUT 3\ng4 INPUT 4\n"
        "g5 AND g1 g2\ng6 NOT g5\ng7 AND g3 g4\ng8 NOT g7\n"
        "g9 AND g6 g8\ng10 NOT g9\ng10\n");
    circuit c = parse_circuit(is);
    truth_table nand4 = roster::gen_nand(4);
    std::vector<u32> point;
    for (u64 x = 0; x < 16; ++x) {
        nand4.decode(x, point);
        CHECK(c.eval(point) == nand4.at(x));
    }
}

TEST_CASE("constant folding") {
    std::istringstream is(
        "g1 INPUT 1\ng2 CONST 1\ng3 AND g1 g2\ng4 CONST 0\ng5 OR g3 g4\ng5\n");
    circuit c = parse_circuit(is);
    circuit folded = fold_constants(c);
    for (const auto& g : folded.gates) CHECK(g.kind != circuit::op::constant);
    for (u32 x = 0; x <= 1; ++x) {
        std::vector<u32> xs{x};
        CHECK(folded.eval(xs) == c.eval(xs));
    }
    std::istringstream allc("g1 CONST 1\ng2 INPUT 1\ng3 OR g2 g1\ng3\n");
    circuit cc = parse_circuit(allc);
    CHECK_THROWS_AS(fold_constants(cc), argument_error);  // folds to constant 1
}

TEST_CASE("projection sizes and rules") {
    circuit c = and_circuit();
    projection pr = project_to_gen(c);
    CHECK(pr.m == 9);  // 3n + 1 + 2 S(n) with n = 2, S = 1
    CHECK(pr.cells.size() == 36);
    // each variable controls exactly one cell
    CHECK(pr.var_controlled_cells(1) == 1);
    CHECK(pr.var_controlled_cells(2) == 1);
    // rule 4 on a NOT-only circuit
    circuit notc;
    notc.n_inputs = 1;
    notc.gates = {{circuit::op::input, 1, 0}, {circuit::op::not_gate, 0, 0}};
    notc.output = 1;
    projection prn = project_to_gen(notc);
    CHECK(prn.var_controlled_cells(1) == 1);
    CHECK(verify_projection(notc).ok);
}

TEST_CASE("projection verification on the anchors") {
    CHECK(verify_projection(and_circuit()).ok);
    circuit orc = and_circuit();
    orc.gates[2].kind = circuit::op::or_gate;
    CHECK(verify_projection(orc).ok);
}

TEST_CASE("duplicate input pairs are rejected") {
    circuit c;
    c.n_inputs = 2;
    c.gates = {{circuit::op::input, 1, 0},
               {circuit::op::input, 2, 0},
               {circuit::op::and_gate, 0, 1},
               {circuit::op::or_gate, 0, 1},
               {circuit::op::and_gate, 2, 3}};
    c.output = 4;
    CHECK_FALSE(c.distinct_input_pairs());
    CHECK_THROWS_AS(project_to_gen(c), argument_error);
}

TEST_CASE("the BRS circuit matches the roster table and projects at small d") {
    for (u32 d : {0u, 1u, 2u}) {
        circuit c = brs_circuit(d);
        CHECK(c.distinct_input_pairs());
        truth_table t = roster::gen_brs(d);
        std::vector<u32> point;
        for (u64 x = 0; x < t.size(); ++x) {
            t.decode(x, point);
            REQUIRE(c.eval(point) == t.at(x));
        }
    }
    // the d=0 instance is small enough to verify the projection exhaustively
    CHECK(verify_projection(brs_circuit(0)).ok);
}
