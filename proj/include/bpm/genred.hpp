#pragma once

#include <iosfwd>
#include <string>

#include "bpm/truth_table.hpp"

namespace bpm::genred {

// Upper-triangular commutative multiplication table on [m]: entries for
// 1 <= i <= j <= m-1 (the top element m has no products).
struct gen_table {
    u32 m = 0;
    std::vector<u32> entries;  // values in [m], tri-indexed

    static u64 cell_count(u32 m) { return u64(m - 1) * m / 2; }
    static u64 tri_index(u32 m, u32 i, u32 j);  // 1 <= i <= j <= m-1
    u32 at(u32 i, u32 j) const;
};

// m reachable from 1: closure seeded by 1*1, closed under products of
// generated elements and 1.
bool gen_eval(const gen_table& t);

struct circuit {
    enum class op : u8 { input, constant, not_gate, and_gate, or_gate };
    struct gate {
        op kind;
        u32 a = 0, b = 0;  // inputs: gate ids; for input, a = variable index
    };
    std::vector<gate> gates;  // references always point backwards
    u32 output = 0;           // gate id
    u32 n_inputs = 0;

    u32 eval(std::span<const u32> x) const;
    u32 gate_count() const;  // non-input non-constant gates
    bool distinct_input_pairs() const;
};

circuit parse_circuit(std::istream& is);
std::string circuit_to_string(const circuit& c);
circuit fold_constants(const circuit& c);

// The read-once projection: every cell is a fixed element except one
// diagonal cell per input variable.
struct projection {
    u32 m = 0;        // elements
    u32 n_inputs = 0;
    struct cell {
        bool is_var = false;
        u32 var = 0;        // 1-based input index when is_var
        u32 if0 = 0, if1 = 0;
        u32 value = 0;      // constant element otherwise
    };
    std::vector<cell> cells;             // tri-indexed over [m-1]
    std::vector<std::string> elem_name;  // provenance, 1-based

    gen_table instantiate(std::span<const u32> x) const;
    u64 var_controlled_cells(u32 var) const;  // read-once means exactly 1
};

projection project_to_gen(const circuit& c);

struct verify_result {
    bool ok = false;
    u64 tested = 0;
    i64 first_violation = -1;  // input index when !ok
    bool read_once = false;
};
verify_result verify_projection(const circuit& c);

// A De Morgan circuit computing BRS via a one-hot mod-3 accumulator,
// distinct-input-pair safe by construction. d <= 2.
circuit brs_circuit(u32 d);

}  // namespace bpm::genred
