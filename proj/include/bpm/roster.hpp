#pragma once

#include "bpm/truth_table.hpp"

namespace bpm::roster {

// Each generator has a companion reference evaluator on a deliberately
// different code path; tests compare them point by point.

truth_table gen_eq(u32 n);                 // 2n bits, x then y
u32 ref_eq(u32 n, std::span<const u32> p);

truth_table gen_seq(u32 n);                // 2n + ceil(log2 n) bits
u32 ref_seq(u32 n, std::span<const u32> p);

truth_table gen_parity(u32 n);
u32 ref_parity(u32 n, std::span<const u32> p);

truth_table gen_clique(u32 n);             // n(n-1)/2 edge bits, pairs (i,j) i<j lexicographic
u32 ref_clique(u32 n, std::span<const u32> p);

truth_table gen_pointer(u32 n);            // requires n = (log n) * (n/log n), n/log n a square
u32 ref_pointer(u32 n, std::span<const u32> p);

truth_table gen_isa(u32 n);                // log n index bits then n data bits
u32 ref_isa(u32 n, std::span<const u32> p);

truth_table gen_nand(u32 n);               // n = 2^h
u32 ref_nand(u32 n, std::span<const u32> p);

truth_table gen_brs(u32 d);                // 4 * 2^d bits: x pairs then y pairs
u32 ref_brs(u32 d, std::span<const u32> p);

truth_table product_with_parity(const truth_table& g);  // f(x,y) = g(x) & PARITY(y)

}  // namespace bpm::roster
