#pragma once

#include <iosfwd>

#include "bpm/truth_table.hpp"

namespace bpm::tseitin {

struct graph {
    u32 n = 0;  // vertices, 1-based in files
    std::vector<std::pair<u32, u32>> edges;

    u32 m() const { return static_cast<u32>(edges.size()); }
};

graph read_graph(std::istream& is);  // "n m" then m lines "u v"

struct instance {
    graph g;
    std::vector<u8> charge;  // one bit per vertex
};

std::vector<u8> read_charge(std::istream& is, u32 n);

// satisfiable iff every connected component has even total charge
bool satisfiable(const instance& inst);

u32 component_count(const graph& g);  // isolated vertices count as components

truth_table tseitin_table(const instance& inst);  // m variables, edge order
u64 count_sat(const instance& inst);              // checks the 2^(m-n+kappa) identity

struct kappa_profile_t {
    std::vector<u32> kappa;  // kappa_G(l) for l = 0..m
    u32 kappa_G = 0;         // components of the full graph
};
kappa_profile_t kappa_profile(const graph& g);

struct bound_result {
    u64 value = 0;
    u32 witness_ell = 0;
};
// max over l of 2^(n - kappa(l) - kappa(m-l) + kappa(G)); satisfiable only
bound_result tseitin_bound(const instance& inst);

struct crosscheck_result {
    u64 bound = 0;
    u64 c_hat = 0;
    bool holds = false;
};
crosscheck_result crosscheck_chat(const instance& inst);

}  // namespace bpm::tseitin
