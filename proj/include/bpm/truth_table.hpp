#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bpm/common.hpp"

namespace bpm {

enum class range_kind : u8 { boolean, natural };

// Explicit total function f : D^n -> N with D = {0,..,d-1}. The value table
// is indexed by sum x_i * d^(n-i), i.e. x_1 is the most significant digit.
// Instances are immutable after construction.
class truth_table {
  public:
    truth_table(u32 n, u32 d, std::vector<u32> values);

    u32 n() const { return n_; }
    u32 d() const { return d_; }
    range_kind range() const { return range_; }
    bool is_boolean() const { return range_ == range_kind::boolean; }
    u64 size() const { return values_.size(); }
    const std::vector<u32>& values() const { return values_; }

    u32 at(u64 index) const { return values_[index]; }

    // Digits are 0-based symbols, point[0] = x_1.
    u32 eval(std::span<const u32> point) const;
    u64 index_of(std::span<const u32> point) const;
    void decode(u64 index, std::vector<u32>& point) const;

    bool is_constant() const;
    // Does f essentially depend on variable i (1-based)?
    bool depends_on(u32 var) const;

    friend bool operator==(const truth_table& a, const truth_table& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.values_ == b.values_;
    }

  private:
    u32 n_;
    u32 d_;
    range_kind range_;
    std::vector<u32> values_;
};

// A subset of [n], stored with bit i-1 for variable i.
struct var_set {
    u32 n = 0;
    u64 mask = 0;

    var_set() = default;
    var_set(u32 arity, u64 m) : n(arity), mask(m) {
        check_arg(arity <= 63, "arity above 63 unsupported for variable sets");
        check_arg((m >> arity) == 0, "variable set mask exceeds arity");
    }
    static var_set from_indices(u32 arity, const std::vector<u32>& idx) {
        return var_set(arity, indices_to_mask(idx, arity));
    }

    u32 count() const { return static_cast<u32>(popcount64(mask)); }
    var_set complement() const { return var_set(n, ~mask & ((u64(1) << n) - 1)); }
    std::vector<u32> indices() const { return mask_to_indices(mask); }
    bool contains(u32 var) const { return (mask >> (var - 1)) & 1; }
};

struct row_stats_t {
    u64 nrows = 0;  // distinct rows of f_A
    u64 mult = 0;   // occurrences of a most frequent row
};

// Matrix view f_A: rows indexed by assignments to A (ascending positions,
// most significant first), columns by assignments to the complement.
class split_view {
  public:
    split_view(const truth_table& t, var_set A);

    const truth_table& table() const { return *table_; }
    const var_set& vars() const { return A_; }
    u64 rows() const { return rows_; }
    u64 cols() const { return cols_; }

    u32 entry(u64 alpha, u64 beta) const {
        check_arg(alpha < rows_ && beta < cols_, "split_view entry index out of range");
        return table_->at(row_base_[alpha] + col_base_[beta]);
    }
    u64 global_index(u64 alpha, u64 beta) const { return row_base_[alpha] + col_base_[beta]; }

    void extract_row(u64 alpha, std::vector<u32>& out) const;

  private:
    const truth_table* table_;
    var_set A_;
    u64 rows_, cols_;
    std::vector<u64> row_base_, col_base_;
};

// --- boolfn operations ---------------------------------------------------

using eval_fn = std::function<u32(std::span<const u32>)>;

truth_table build_table(u32 n, u32 d, const eval_fn& eval);

split_view split(const truth_table& f, var_set A);

// Subfunction f_{A,alpha} as a table on the complement variables.
truth_table subfunction(const truth_table& f, var_set A, u64 alpha);

row_stats_t row_stats(const truth_table& f, var_set A);

// Rectangle test per the boolean-g / natural-h factorization. When f_A is a
// rectangle, g has one bit per row and h one value per column.
struct rectangle_witness {
    bool is_rectangle = false;
    std::vector<u8> g;
    std::vector<u32> h;
};
rectangle_witness is_rectangle(const truth_table& f, var_set A);

enum class combine_op : u8 { negate, op_and, op_or, product, sum };
truth_table combine(combine_op op, const truth_table& a, const truth_table& b);
truth_table combine(combine_op op, const truth_table& a);  // negate only

bool orthogonal(const truth_table& a, const truth_table& b);

// Text format: line 1 "TT <n> <d> <bool|nat>", then d^n values.
void write_tt(std::ostream& os, const truth_table& t);
truth_table read_tt(std::istream& is);
std::string tt_to_string(const truth_table& t);
truth_table tt_from_string(const std::string& s);

}  // namespace bpm
