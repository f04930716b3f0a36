#include "bpm/subset_scan.hpp"

#include <algorithm>
#include <cstring>

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace bpm {

namespace {

inline u64 pext_soft(u64 x, u64 mask) {
    u64 res = 0;
    u64 bit = 1;
    while (mask) {
        u64 low = mask & (~mask + 1);
        if (x & low) res |= bit;
        bit <<= 1;
        mask ^= low;
    }
    return res;
}

inline u64 pext(u64 x, u64 mask) {
#if defined(__BMI2__)
    return _pext_u64(x, mask);
#else
    return pext_soft(x, mask);
#endif
}

inline u64 fnv1a(const u64* words, u64 count) {
    u64 h = 0xcbf29ce484222325ull;
    for (u64 i = 0; i < count; ++i) {
        h ^= words[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

row_stats_t stats_from_sorted_u64(std::vector<u64>& rows) {
    std::sort(rows.begin(), rows.end());
    row_stats_t st;
    u64 run = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i == 0 || rows[i] != rows[i - 1]) {
            ++st.nrows;
            run = 1;
        } else {
            ++run;
        }
        st.mult = std::max(st.mult, run);
    }
    return st;
}

// Boolean tables: rows become bit vectors.
struct bool_kernel {
    u32 n;
    std::vector<u64> packed;  // f as a 2^n bitset

    explicit bool_kernel(const truth_table& f) : n(f.n()) {
        packed.assign((f.size() + 63) / 64, 0);
        for (u64 x = 0; x < f.size(); ++x)
            if (f.at(x)) packed[x >> 6] |= u64(1) << (x & 63);
    }

    row_stats_t stats(u64 amask, std::vector<u64>& scratch) const {
        u32 l = static_cast<u32>(popcount64(amask));
        u64 full = (n == 64) ? ~u64(0) : ((u64(1) << n) - 1);
        u64 bmask = full & ~amask;
        u64 rows = u64(1) << l;
        u32 colbits = n - l;

        if (colbits <= 6) {
            // whole row fits one u64
            scratch.assign(rows, 0);
            for (u64 w = 0; w < packed.size(); ++w) {
                u64 word = packed[w];
                while (word) {
                    u32 b = static_cast<u32>(ctz64(word));
                    word &= word - 1;
                    u64 x = (w << 6) | b;
                    scratch[pext(x, amask)] |= u64(1) << pext(x, bmask);
                }
            }
            return stats_from_sorted_u64(scratch);
        }

        // tight layout: bit (alpha << colbits) | beta
        u64 words = (u64(1) << n) >> 6;
        scratch.assign(words, 0);
        for (u64 w = 0; w < packed.size(); ++w) {
            u64 word = packed[w];
            while (word) {
                u32 b = static_cast<u32>(ctz64(word));
                word &= word - 1;
                u64 x = (w << 6) | b;
                u64 pos = (pext(x, amask) << colbits) | pext(x, bmask);
                scratch[pos >> 6] |= u64(1) << (pos & 63);
            }
        }
        u64 roww = u64(1) << (colbits - 6);
        std::vector<u64> hash(rows);
        for (u64 a = 0; a < rows; ++a) hash[a] = fnv1a(&scratch[a * roww], roww);
        std::vector<u32> order(rows);
        for (u64 a = 0; a < rows; ++a) order[a] = static_cast<u32>(a);
        auto exact_cmp = [&](u32 a, u32 b) {
            return std::memcmp(&scratch[u64(a) * roww], &scratch[u64(b) * roww], roww * 8);
        };
        std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
            if (hash[a] != hash[b]) return hash[a] < hash[b];
            return exact_cmp(a, b) < 0;
        });
        row_stats_t st;
        u64 run = 0;
        for (u64 i = 0; i < rows; ++i) {
            if (i == 0 || hash[order[i]] != hash[order[i - 1]] ||
                exact_cmp(order[i], order[i - 1]) != 0) {
                ++st.nrows;
                run = 1;
            } else {
                ++run;
            }
            st.mult = std::max(st.mult, run);
        }
        return st;
    }
};

// Arbitrary radix: rows as u32 slices filled by a digit odometer.
struct radix_kernel {
    const truth_table& f;
    std::vector<u64> alpha_place, beta_place;  // contribution of digit at position j

    explicit radix_kernel(const truth_table& t) : f(t) {}

    row_stats_t stats(u64 amask, std::vector<u32>& rowbuf) const {
        u32 n = f.n(), d = f.d();
        u32 l = static_cast<u32>(popcount64(amask));
        u64 rows = 1, cols = 1;
        for (u32 i = 0; i < l; ++i) rows *= d;
        for (u32 i = 0; i < n - l; ++i) cols *= d;

        // place of position j (0-based, x_1 first) inside alpha resp. beta
        std::vector<u64> pa(n, 0), pb(n, 0);
        {
            u64 pl = 1;
            for (u32 j = n; j-- > 0;)
                if ((amask >> j) & 1) { pa[j] = pl; pl *= d; }
            pl = 1;
            for (u32 j = n; j-- > 0;)
                if (!((amask >> j) & 1)) { pb[j] = pl; pl *= d; }
        }
        // NOTE: mask bit j-1 is variable j = position j-1 here; amask bit i
        // corresponds to variable i+1 whose digit sits at point index i.
        // Positions are indexed by point slot 0..n-1 where slot i holds x_{i+1}
        // and the mask bit for x_{i+1} is bit i.
        rowbuf.assign(rows * cols, 0);
        std::vector<u32> dig(n, 0);
        u64 alpha = 0, beta = 0;
        for (u64 x = 0;; ++x) {
            rowbuf[alpha * cols + beta] = f.at(x);
            if (x + 1 == f.size()) break;
            for (u32 j = n; j-- > 0;) {
                if (++dig[j] < d) {
                    if (pa[j]) alpha += pa[j]; else beta += pb[j];
                    break;
                }
                dig[j] = 0;
                if (pa[j]) alpha -= pa[j] * (d - 1); else beta -= pb[j] * (d - 1);
            }
        }

        std::vector<u64> hash(rows);
        for (u64 a = 0; a < rows; ++a) {
            u64 h = 0xcbf29ce484222325ull;
            const u32* r = &rowbuf[a * cols];
            for (u64 b = 0; b < cols; ++b) {
                h ^= r[b];
                h *= 0x100000001b3ull;
            }
            hash[a] = h;
        }
        std::vector<u32> order(rows);
        for (u64 a = 0; a < rows; ++a) order[a] = static_cast<u32>(a);
        auto exact_cmp = [&](u32 a, u32 b) {
            return std::memcmp(&rowbuf[u64(a) * cols], &rowbuf[u64(b) * cols], cols * 4);
        };
        std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
            if (hash[a] != hash[b]) return hash[a] < hash[b];
            return exact_cmp(a, b) < 0;
        });
        row_stats_t st;
        u64 run = 0;
        for (u64 i = 0; i < rows; ++i) {
            if (i == 0 || hash[order[i]] != hash[order[i - 1]] ||
                exact_cmp(order[i], order[i - 1]) != 0) {
                ++st.nrows;
                run = 1;
            } else {
                ++run;
            }
            st.mult = std::max(st.mult, run);
        }
        return st;
    }
};

// amask uses bit i for variable i+1; positions in the global index have x_1
// most significant. The boolean kernel's pext runs over the index itself, so
// it needs the mask expressed over index bits: variable i+1 occupies index
// bit n-1-i. Convert.
u64 index_bit_mask(u32 n, u64 varmask) {
    u64 m = 0;
    for (u32 i = 0; i < n; ++i)
        if ((varmask >> i) & 1) m |= u64(1) << (n - 1 - i);
    return m;
}

}  // namespace

row_stats_t subset_stats(const truth_table& f, u64 amask) {
    check_arg((amask >> f.n()) == 0, "subset mask exceeds arity");
    if (f.d() == 2 && f.is_boolean() && f.n() <= 28) {
        bool_kernel k(f);
        std::vector<u64> scratch;
        return k.stats(index_bit_mask(f.n(), amask), scratch);
    }
    radix_kernel k(f);
    std::vector<u32> buf;
    return k.stats(amask, buf);
}

subset_scan_result scan_all_subsets(const truth_table& f) {
    check_arg(f.n() <= 24, "subset scan limited to 24 variables");
    u64 total = u64(1) << f.n();
    subset_scan_result res;
    res.n = f.n();
    res.nrows.assign(total, 0);
    res.mult.assign(total, 0);

    if (f.d() == 2 && f.is_boolean()) {
        bool_kernel k(f);
        parallel_for(total, [&](u64 b, u64 e, u32) {
            std::vector<u64> scratch;
            for (u64 m = b; m < e; ++m) {
                row_stats_t st = k.stats(index_bit_mask(f.n(), m), scratch);
                res.nrows[m] = static_cast<u32>(st.nrows);
                res.mult[m] = static_cast<u32>(st.mult);
            }
        });
    } else {
        radix_kernel k(f);
        parallel_for(total, [&](u64 b, u64 e, u32) {
            std::vector<u32> buf;
            for (u64 m = b; m < e; ++m) {
                row_stats_t st = k.stats(m, buf);
                res.nrows[m] = static_cast<u32>(st.nrows);
                res.mult[m] = static_cast<u32>(st.mult);
            }
        });
    }
    return res;
}

std::vector<layer_aggregate> aggregate_layers(const subset_scan_result& scan) {
    std::vector<layer_aggregate> layers(scan.n + 1);
    std::vector<bool> seen(scan.n + 1, false);
    for (u64 m = 0; m < scan.nrows.size(); ++m) {
        u32 k = static_cast<u32>(popcount64(m));
        layer_aggregate& L = layers[k];
        if (!seen[k]) {
            seen[k] = true;
            L.min_nrows = scan.nrows[m];
            L.min_nrows_mask = m;
            L.max_mult = scan.mult[m];
            L.max_mult_mask = m;
            continue;
        }
        if (scan.nrows[m] < L.min_nrows ||
            (scan.nrows[m] == L.min_nrows && mask_lex_less(m, L.min_nrows_mask))) {
            L.min_nrows = scan.nrows[m];
            L.min_nrows_mask = m;
        }
        if (scan.mult[m] > L.max_mult ||
            (scan.mult[m] == L.max_mult && mask_lex_less(m, L.max_mult_mask))) {
            L.max_mult = scan.mult[m];
            L.max_mult_mask = m;
        }
    }
    return layers;
}

std::vector<u64> masks_of_size(u32 n, u32 k) {
    std::vector<u64> out;
    if (k > n) return out;
    if (k == 0) { out.push_back(0); return out; }
    u64 m = (u64(1) << k) - 1;
    u64 limit = u64(1) << n;
    while (m < limit) {
        out.push_back(m);
        u64 c = m & (~m + 1);
        u64 r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    return out;
}

}  // namespace bpm
