#include "bpm/truth_table.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace bpm {

truth_table::truth_table(u32 n, u32 d, std::vector<u32> values) : n_(n), d_(d) {
    check_arg(d >= 2, "domain radix must be at least 2");
    u64 want = checked_pow(d, n, cell_budget());
    check_arg(values.size() == want, "value vector has length " + std::to_string(values.size()) +
                                         ", expected " + std::to_string(want));
    values_ = std::move(values);
    bool boolean = true;
    for (u32 v : values_)
        if (v > 1) { boolean = false; break; }
    range_ = boolean ? range_kind::boolean : range_kind::natural;
}

u64 truth_table::index_of(std::span<const u32> point) const {
    check_arg(point.size() == n_, "point arity mismatch");
    u64 idx = 0;
    for (u32 i = 0; i < n_; ++i) {
        check_arg(point[i] < d_, "symbol out of range");
        idx = idx * d_ + point[i];
    }
    return idx;
}

u32 truth_table::eval(std::span<const u32> point) const { return values_[index_of(point)]; }

void truth_table::decode(u64 index, std::vector<u32>& point) const {
    point.assign(n_, 0);
    for (u32 i = n_; i-- > 0;) {
        point[i] = static_cast<u32>(index % d_);
        index /= d_;
    }
}

bool truth_table::is_constant() const {
    for (u32 v : values_)
        if (v != values_[0]) return false;
    return true;
}

bool truth_table::depends_on(u32 var) const {
    check_arg(var >= 1 && var <= n_, "variable index out of range");
    // stride of variable `var` in the index
    u64 stride = 1;
    for (u32 i = 0; i < n_ - var; ++i) stride *= d_;
    u64 block = stride * d_;
    for (u64 base = 0; base < size(); base += block)
        for (u64 off = 0; off < stride; ++off) {
            u32 v0 = values_[base + off];
            for (u32 s = 1; s < d_; ++s)
                if (values_[base + s * stride + off] != v0) return true;
        }
    return false;
}

split_view::split_view(const truth_table& t, var_set A) : table_(&t), A_(A) {
    check_arg(A.n == t.n(), "variable set arity mismatch");
    u32 l = A.count();
    rows_ = checked_pow(t.d(), l, cell_budget());
    cols_ = checked_pow(t.d(), t.n() - l, cell_budget());

    // Place value of variable i (1-based) in the global index is d^(n-i).
    std::vector<u64> place(t.n() + 1, 1);
    for (u32 i = t.n(); i >= 1; --i) place[i] = (i == t.n()) ? 1 : place[i + 1] * t.d();

    auto bases = [&](const std::vector<u32>& pos, u64 count) {
        std::vector<u64> base(count, 0);
        // odometer over the digits at `pos`, most significant first
        std::vector<u32> dig(pos.size(), 0);
        for (u64 v = 0; v < count; ++v) {
            u64 b = 0;
            for (size_t j = 0; j < pos.size(); ++j) b += u64(dig[j]) * place[pos[j]];
            base[v] = b;
            for (size_t j = pos.size(); j-- > 0;) {
                if (++dig[j] < t.d()) break;
                dig[j] = 0;
            }
        }
        return base;
    };
    row_base_ = bases(A.indices(), rows_);
    col_base_ = bases(A.complement().indices(), cols_);
}

void split_view::extract_row(u64 alpha, std::vector<u32>& out) const {
    out.resize(cols_);
    u64 rb = row_base_[alpha];
    for (u64 b = 0; b < cols_; ++b) out[b] = table_->at(rb + col_base_[b]);
}

truth_table build_table(u32 n, u32 d, const eval_fn& eval) {
    u64 sz = checked_pow(d, n, cell_budget());
    std::vector<u32> vals(sz);
    std::vector<u32> point(n, 0);
    for (u64 idx = 0; idx < sz; ++idx) {
        vals[idx] = eval(point);
        for (u32 j = n; j-- > 0;) {
            if (++point[j] < d) break;
            point[j] = 0;
        }
    }
    return truth_table(n, d, std::move(vals));
}

split_view split(const truth_table& f, var_set A) { return split_view(f, A); }

truth_table subfunction(const truth_table& f, var_set A, u64 alpha) {
    split_view v(f, A);
    check_arg(alpha < v.rows(), "row index out of range");
    std::vector<u32> vals(v.cols());
    for (u64 b = 0; b < v.cols(); ++b) vals[b] = v.entry(alpha, b);
    return truth_table(f.n() - A.count(), f.d(), std::move(vals));
}

row_stats_t row_stats(const truth_table& f, var_set A) {
    split_view v(f, A);
    // Sort row indices by content; hashes only ever accelerate the compare.
    std::vector<u64> hash(v.rows());
    std::vector<u32> row;
    for (u64 a = 0; a < v.rows(); ++a) {
        v.extract_row(a, row);
        u64 h = 0xcbf29ce484222325ull;
        for (u32 x : row) h = (h ^ x) * 0x100000001b3ull;
        hash[a] = h;
    }
    std::vector<u64> order(v.rows());
    for (u64 a = 0; a < v.rows(); ++a) order[a] = a;
    std::vector<u32> ra, rb;
    auto cmp = [&](u64 a, u64 b) {
        if (hash[a] != hash[b]) return hash[a] < hash[b];
        v.extract_row(a, ra);
        v.extract_row(b, rb);
        return ra < rb;
    };
    std::sort(order.begin(), order.end(), cmp);
    row_stats_t st;
    u64 run = 0;
    for (u64 i = 0; i < order.size(); ++i) {
        bool newrow = i == 0;
        if (!newrow) {
            v.extract_row(order[i - 1], ra);
            v.extract_row(order[i], rb);
            newrow = ra != rb;
        }
        if (newrow) {
            ++st.nrows;
            run = 1;
        } else {
            ++run;
        }
        st.mult = std::max(st.mult, run);
    }
    return st;
}

rectangle_witness is_rectangle(const truth_table& f, var_set A) {
    split_view v(f, A);
    rectangle_witness w;
    w.g.assign(v.rows(), 0);
    w.h.assign(v.cols(), 0);
    // h := first nonzero row; g_i = 1 iff row i == h, 0 iff row i == 0.
    std::vector<u32> row;
    i64 pivot = -1;
    for (u64 a = 0; a < v.rows() && pivot < 0; ++a) {
        v.extract_row(a, row);
        for (u32 x : row)
            if (x != 0) { pivot = static_cast<i64>(a); break; }
    }
    if (pivot < 0) {  // zero matrix: g = 0 works
        w.is_rectangle = true;
        return w;
    }
    split_view vv(f, A);
    std::vector<u32> h;
    vv.extract_row(static_cast<u64>(pivot), h);
    for (u64 a = 0; a < v.rows(); ++a) {
        v.extract_row(a, row);
        if (row == h) {
            w.g[a] = 1;
        } else {
            for (u32 x : row)
                if (x != 0) return w;  // neither h nor zero
        }
    }
    w.is_rectangle = true;
    w.h = std::move(h);
    return w;
}

truth_table combine(combine_op op, const truth_table& a, const truth_table& b) {
    check_arg(a.n() == b.n() && a.d() == b.d(), "combine: arity or radix mismatch");
    if (op == combine_op::op_and || op == combine_op::op_or)
        check_arg(a.is_boolean() && b.is_boolean(), "combine: boolean range required");
    std::vector<u32> vals(a.size());
    for (u64 i = 0; i < a.size(); ++i) {
        u32 x = a.at(i), y = b.at(i);
        switch (op) {
            case combine_op::op_and: vals[i] = x & y; break;
            case combine_op::op_or: vals[i] = x | y; break;
            case combine_op::product: vals[i] = x * y; break;
            case combine_op::sum: vals[i] = x + y; break;
            default: throw argument_error("combine: negate takes one argument");
        }
    }
    return truth_table(a.n(), a.d(), std::move(vals));
}

truth_table combine(combine_op op, const truth_table& a) {
    check_arg(op == combine_op::negate, "combine: missing second argument");
    check_arg(a.is_boolean(), "negate: boolean range required");
    std::vector<u32> vals(a.size());
    for (u64 i = 0; i < a.size(); ++i) vals[i] = 1 - a.at(i);
    return truth_table(a.n(), a.d(), std::move(vals));
}

bool orthogonal(const truth_table& a, const truth_table& b) {
    check_arg(a.n() == b.n() && a.d() == b.d(), "orthogonal: arity or radix mismatch");
    for (u64 i = 0; i < a.size(); ++i)
        if (a.at(i) != 0 && b.at(i) != 0) return false;
    return true;
}

void write_tt(std::ostream& os, const truth_table& t) {
    os << "TT " << t.n() << ' ' << t.d() << ' ' << (t.is_boolean() ? "bool" : "nat") << '\n';
    for (u64 i = 0; i < t.size(); ++i) {
        os << t.at(i);
        os << (((i + 1) % 32 == 0 || i + 1 == t.size()) ? '\n' : ' ');
    }
}

truth_table read_tt(std::istream& is) {
    std::string tag;
    is >> tag;
    check_arg(tag == "TT", "truth-table file must start with TT");
    u32 n, d;
    std::string kind;
    if (!(is >> n >> d >> kind)) throw argument_error("malformed TT header");
    check_arg(kind == "bool" || kind == "nat", "range kind must be bool or nat");
    u64 sz = checked_pow(d, n, cell_budget());
    std::vector<u32> vals(sz);
    for (u64 i = 0; i < sz; ++i)
        if (!(is >> vals[i])) throw argument_error("truncated TT value list");
    truth_table t(n, d, std::move(vals));
    if (kind == "bool") check_arg(t.is_boolean(), "header says bool but values exceed 1");
    return t;
}

std::string tt_to_string(const truth_table& t) {
    std::ostringstream os;
    write_tt(os, t);
    return os.str();
}

truth_table tt_from_string(const std::string& s) {
    std::istringstream is(s);
    return read_tt(is);
}

}  // namespace bpm
