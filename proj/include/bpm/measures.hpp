#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpm/subset_scan.hpp"
#include "bpm/truth_table.hpp"

namespace bpm {

// --- certificates ----------------------------------------------------------

enum class cert_kind : u8 { cover, partition };

struct rect_part {
    var_set A;
    truth_table g;  // boolean selector on A
    truth_table h;  // value column on the complement
};

struct rect_certificate {
    cert_kind kind = cert_kind::cover;
    std::vector<rect_part> parts;

    // Reconstructs the certified function; throws invariant_error when the
    // parts fail the declared discipline (orthogonality, rectangle shape).
    truth_table reconstruct(u32 n, u32 d) const;
    void verify_against(const truth_table& target) const;
};

struct measure_report {
    std::string measure;
    ratio value;
    u32 witness_k = 0;
    u64 witness_A = 0;  // mask, lexicographically smallest minimizer
    std::optional<rect_certificate> certificate;
};

// --- subfunction-counting measures -----------------------------------------

measure_report measure_S(const truth_table& f);
measure_report measure_S_hat(const truth_table& f);

struct sstar_report {
    u64 value = 0;
    std::vector<u32> order;  // optimal variable order, 1-based
};
sstar_report measure_S_star(const truth_table& f);

bool is_m_mixed(const truth_table& f, u32 m);

// --- cover numbers ----------------------------------------------------------

struct cover_result {
    u64 value = 0;
    rect_certificate certificate;
};

cover_result cover_number_fixed(const truth_table& f, var_set A);
cover_result cover_number_k(const truth_table& f, u32 k);
measure_report measure_C(const truth_table& f);
measure_report measure_C_hat(const truth_table& f);

// --- partition numbers -------------------------------------------------------

cover_result partition_plus_fixed(const truth_table& f, var_set A);
cover_result partition_plus_k(const truth_table& f, u32 k);
measure_report measure_P_plus(const truth_table& f);
measure_report measure_P_plus_hat(const truth_table& f);
measure_report measure_P(const truth_table& f);
measure_report measure_P_hat(const truth_table& f);

// Minimal monochromatic partition of the full matrix f_A; the independent
// route for the identity P+(f,A) + P+(~f,A) = C^D(f_A).
u64 mono_partition_number(const truth_table& f, var_set A);

// --- max-min communication complexity ----------------------------------------

struct protocol_node {
    bool leaf = false;
    u32 leaf_value = 0;
    bool rows_speak = false;          // owner of the split
    u64 half0 = 0, half1 = 0;         // the speaking side's two index sets
    std::vector<protocol_node> kids;  // exactly two when internal
};

struct ccm_result {
    u32 cost = 0;
    protocol_node root;
};

ccm_result ccm(const truth_table& f, var_set A);
u64 nccm_count(const truth_table& f, var_set A);  // C^1(f_A); nccm = log2 of it

measure_report measure_CC(const truth_table& f);
// value carries the underlying integer max-min cover count; NCC itself is
// log2 of it.
measure_report measure_NCC(const truth_table& f);

// --- two-level sizes ----------------------------------------------------------

struct weight_report {
    u64 dnf_size = 0;
    u64 cnf_size = 0;
    u64 weight = 0;
};
weight_report weight(const truth_table& f);

// --- relation harness -----------------------------------------------------------

struct relation_values {
    u32 n = 0;
    u64 S = 0;
    ratio S_hat;
    u64 C = 0, C_hat = 0;
    u64 P = 0, P_hat = 0;
    u64 CC = 0;
    u64 NCC_count = 0;  // the integer under NCC = log2 of it
    ratio S_hat_neg;    // of the negation, for the symmetry identities
    u64 P_hat_neg = 0;
};

struct relation_check {
    std::string name;
    bool pass = false;
    std::string detail;
};

relation_values compute_relation_values(const truth_table& f);
std::vector<relation_check> check_relations(const relation_values& v);

struct relation_outcome {
    relation_values values;
    std::vector<relation_check> checks;
    bool all_pass = true;
};
relation_outcome relation_suite(const truth_table& f);

}  // namespace bpm
