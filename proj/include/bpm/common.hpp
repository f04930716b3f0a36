#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpm {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Input that violates a precondition (CLI exit code 1).
struct argument_error : std::runtime_error {
    explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

// Work or memory beyond the configured budget (CLI exit code 2).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant, e.g. a failed cross-check between two
// independent computations (CLI exit code 3). Always a bug, never bad input.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

inline void check_arg(bool ok, const std::string& msg) {
    if (!ok) throw argument_error(msg);
}

inline void check_invariant(bool ok, const std::string& msg) {
    if (!ok) throw invariant_error(msg);
}

// Global cell budget for explicit tables. Overridable via BPM_CELL_BUDGET.
u64 cell_budget();
void set_cell_budget(u64 cells);

// d^n with overflow detection; throws resource_error against the cell budget.
u64 checked_pow(u64 d, u32 n, u64 budget);

// Exact nonnegative rational, always reduced. Values stay tiny (numerators
// are d^k, denominators row multiplicities), so u64 is plenty.
struct ratio {
    u64 num = 0;
    u64 den = 1;

    ratio() = default;
    ratio(u64 n, u64 d) : num(n), den(d) {
        if (den == 0) throw argument_error("ratio: zero denominator");
        u64 g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    explicit ratio(u64 n) : num(n), den(1) {}

    friend bool operator==(const ratio& a, const ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const ratio& a, const ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den <
               static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<=(const ratio& a, const ratio& b) { return !(b < a); }
    friend bool operator>=(const ratio& a, const ratio& b) { return !(a < b); }
    friend bool operator>(const ratio& a, const ratio& b) { return b < a; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

inline int popcount64(u64 x) { return __builtin_popcountll(x); }
inline int ctz64(u64 x) { return __builtin_ctzll(x); }

// Compares two variable sets by their sorted index lists ({1,4} < {2,3}).
// Masks use bit i-1 for variable i. Equal masks compare equal.
inline bool mask_lex_less(u64 a, u64 b) {
    if (a == b) return false;
    u64 diff = a ^ b;
    u64 low = diff & (~diff + 1);
    return (a & low) != 0;
}

std::vector<u32> mask_to_indices(u64 mask);  // 1-based, ascending
u64 indices_to_mask(const std::vector<u32>& idx, u32 n);

// Deterministic parallel map over [0, count): results identical for any
// thread count. Thread count from BPM_THREADS (default: hardware).
u32 worker_threads();
void set_worker_threads(u32 threads);
void parallel_for(u64 count, const std::function<void(u64 begin, u64 end, u32 chunk)>& body);

}  // namespace bpm
