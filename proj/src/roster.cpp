#include "bpm/roster.hpp"

#include <algorithm>

namespace bpm::roster {

namespace {

u32 ceil_log2(u32 n) {
    u32 b = 0;
    while ((u32(1) << b) < n) ++b;
    return b;
}

bool is_pow2(u32 n) { return n >= 1 && (n & (n - 1)) == 0; }

u32 bits_to_uint(std::span<const u32> p, u32 from, u32 count) {
    u32 v = 0;
    for (u32 i = 0; i < count; ++i) v = (v << 1) | p[from + i];
    return v;
}

}  // namespace

truth_table gen_eq(u32 n) {
    check_arg(n >= 1, "EQ needs n >= 1");
    return build_table(2 * n, 2, [n](std::span<const u32> p) -> u32 {
        for (u32 i = 0; i < n; ++i)
            if (p[i] != p[n + i]) return 0;
        return 1;
    });
}

u32 ref_eq(u32 n, std::span<const u32> p) {
    return bits_to_uint(p, 0, n) == bits_to_uint(p, n, n) ? 1 : 0;
}

truth_table gen_seq(u32 n) {
    check_arg(n >= 2, "SEQ needs n >= 2");
    u32 ib = ceil_log2(n);
    return build_table(2 * n + ib, 2, [n, ib](std::span<const u32> p) -> u32 {
        u32 enc = bits_to_uint(p, 2 * n, ib);
        if (enc >= n) return 0;  // out-of-range index encodings are 0
        u32 i = enc + 1;
        for (u32 j = 1; j <= n; ++j) {
            u32 t = ((j + i - 2) % n) + 1;
            if (p[j - 1] != p[n + t - 1]) return 0;
        }
        return 1;
    });
}

u32 ref_seq(u32 n, std::span<const u32> p) {
    // rotate y so the comparison becomes plain equality
    u32 ib = ceil_log2(n);
    u32 enc = bits_to_uint(p, 2 * n, ib);
    if (enc >= n) return 0;
    std::vector<u32> rotated(n);
    for (u32 j = 1; j <= n; ++j) rotated[j - 1] = p[n + ((j + enc - 1) % n)];
    for (u32 j = 0; j < n; ++j)
        if (p[j] != rotated[j]) return 0;
    return 1;
}

truth_table gen_parity(u32 n) {
    check_arg(n >= 1, "PARITY needs n >= 1");
    return build_table(n, 2, [](std::span<const u32> p) -> u32 {
        u32 s = 0;
        for (u32 b : p) s ^= b;
        return s;
    });
}

u32 ref_parity(u32, std::span<const u32> p) {
    u32 ones = 0;
    for (u32 b : p) ones += b;
    return ones % 2;
}

namespace {

// edge variable order: (1,2),(1,3),...,(1,n),(2,3),...
u32 edge_index(u32 n, u32 i, u32 j) {
    // i < j, both 1-based; index 0-based
    u32 idx = 0;
    for (u32 a = 1; a < i; ++a) idx += n - a;
    return idx + (j - i - 1);
}

}  // namespace

truth_table gen_clique(u32 n) {
    check_arg(n >= 2 && n <= 8, "clique generator needs 2 <= n <= 8");
    u32 m = n * (n - 1) / 2;
    u32 want = (n + 1) / 2;
    return build_table(m, 2, [n, want](std::span<const u32> p) -> u32 {
        // degree profile route
        std::vector<u32> deg(n + 1, 0);
        u32 edges = 0;
        u32 e = 0;
        for (u32 i = 1; i <= n; ++i)
            for (u32 j = i + 1; j <= n; ++j, ++e)
                if (p[e]) {
                    ++deg[i];
                    ++deg[j];
                    ++edges;
                }
        std::vector<u32> members;
        for (u32 v = 1; v <= n; ++v)
            if (deg[v] > 0) members.push_back(v);
        if (edges == 0) return want == 1 ? 1 : 0;  // a 1-clique is a bare vertex
        if (members.size() != want) return 0;
        if (edges != want * (want - 1) / 2) return 0;
        for (u32 a = 0; a < members.size(); ++a)
            for (u32 b = a + 1; b < members.size(); ++b)
                if (!p[edge_index(n, members[a], members[b])]) return 0;
        return 1;
    });
}

u32 ref_clique(u32 n, std::span<const u32> p) {
    // subset enumeration route: is the edge set exactly some clique?
    u32 want = (n + 1) / 2;
    for (u32 sub = 0; sub < (u32(1) << n); ++sub) {
        if (static_cast<u32>(popcount64(sub)) != want) continue;
        bool match = true;
        u32 e = 0;
        for (u32 i = 1; i <= n && match; ++i)
            for (u32 j = i + 1; j <= n && match; ++j, ++e) {
                bool in_clique = ((sub >> (i - 1)) & 1) && ((sub >> (j - 1)) & 1);
                if (p[e] != (in_clique ? 1u : 0u)) match = false;
            }
        if (match) return 1;
    }
    return 0;
}

namespace {

void pointer_shape(u32 n, u32& blocks, u32& blockbits, u32& m) {
    check_arg(is_pow2(n), "pointer function needs n a power of two");
    blocks = ceil_log2(n);
    check_arg(n % blocks == 0, "pointer function needs n / log n integral");
    blockbits = n / blocks;
    m = 0;
    while (m * m < blockbits) ++m;
    check_arg(m * m == blockbits,
              "pointer function needs n / log n a perfect square for the OR-AND blocks");
}

}  // namespace

truth_table gen_pointer(u32 n) {
    u32 blocks, blockbits, m;
    pointer_shape(n, blocks, blockbits, m);
    return build_table(n, 2, [blocks, blockbits, m](std::span<const u32> p) -> u32 {
        u32 z = 0;
        for (u32 i = 0; i < blocks; ++i) {
            u32 zi = 0;
            for (u32 r = 0; r < m && !zi; ++r) {
                u32 all = 1;
                for (u32 c = 0; c < m; ++c) all &= p[i * blockbits + r * m + c];
                zi = all;
            }
            z = (z << 1) | zi;
        }
        return p[z];
    });
}

u32 ref_pointer(u32 n, std::span<const u32> p) {
    u32 blocks, blockbits, m;
    pointer_shape(n, blocks, blockbits, m);
    u32 z = 0;
    for (u32 i = blocks; i-- > 0;) {
        bool any = false;
        for (u32 r = 0; r < m; ++r) {
            bool all = true;
            for (u32 c = 0; c < m; ++c) all = all && p[i * blockbits + r * m + c] == 1;
            any = any || all;
        }
        if (any) z |= u32(1) << (blocks - 1 - i);
    }
    return p[z];
}

truth_table gen_isa(u32 n) {
    check_arg(is_pow2(n) && n >= 2, "ISA needs n a power of two");
    u32 ib = ceil_log2(n);
    return build_table(ib + n, 2, [n, ib](std::span<const u32> p) -> u32 {
        u32 i = bits_to_uint(p, 0, ib) + 1;  // i in [n]
        u32 addr = 0;
        for (u32 t = 0; t < ib; ++t) {
            u32 pos = ((i - 1 + t) % n) + 1;
            addr = (addr << 1) | p[ib + pos - 1];
        }
        return p[ib + addr];  // x_{addr+1}
    });
}

u32 ref_isa(u32 n, std::span<const u32> p) {
    u32 ib = ceil_log2(n);
    std::vector<u32> x(p.begin() + ib, p.end());
    u32 i = bits_to_uint(p, 0, ib);
    u32 addr = 0;
    for (u32 t = ib; t-- > 0;) addr |= x[(i + (ib - 1 - t)) % n] << t;
    return x[addr];
}

truth_table gen_nand(u32 n) {
    check_arg(is_pow2(n) && n >= 2, "NAND tree needs n = 2^h >= 2");
    return build_table(n, 2, [n](std::span<const u32> p) -> u32 {
        std::vector<u32> level(p.begin(), p.end());
        while (level.size() > 1) {
            std::vector<u32> up(level.size() / 2);
            for (size_t i = 0; i < up.size(); ++i)
                up[i] = 1 - (level[2 * i] & level[2 * i + 1]);
            level = std::move(up);
        }
        (void)n;
        return level[0];
    });
}

u32 ref_nand(u32 n, std::span<const u32> p) {
    // recursive route
    std::function<u32(u32, u32)> go = [&](u32 from, u32 len) -> u32 {
        if (len == 1) return p[from];
        u32 a = go(from, len / 2), b = go(from + len / 2, len / 2);
        return (a == 1 && b == 1) ? 0 : 1;
    };
    return go(0, n);
}

truth_table gen_brs(u32 d) {
    check_arg(d <= 2, "full BRS tables are limited to d <= 2");
    u32 n = u32(1) << d;
    return build_table(4 * n, 2, [d, n](std::span<const u32> p) -> u32 {
        u32 acc = 0;  // mod 3
        for (u32 a = 0; a < n; ++a)
            for (u32 b = 0; b < n; ++b) {
                u32 xa = p[2 * a] + p[2 * a + 1];
                u32 yb = p[2 * n + 2 * b] + p[2 * n + 2 * b + 1];
                u32 term = (xa * yb) % 3;
                u32 ip = static_cast<u32>(popcount64(a & b)) & 1;
                acc = (acc + (ip ? (3 - term) % 3 : term)) % 3;
                (void)d;
            }
        return acc == 0 ? 1 : 0;
    });
}

u32 ref_brs(u32 d, std::span<const u32> p) {
    // signed integer sum, reduced once at the end
    u32 n = u32(1) << d;
    i64 sum = 0;
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            i64 sign = (popcount64(a & b) % 2 == 0) ? 1 : -1;
            sum += sign * i64(p[2 * a] + p[2 * a + 1]) *
                   i64(p[2 * n + 2 * b] + p[2 * n + 2 * b + 1]);
        }
    i64 r = sum % 3;
    return r == 0 ? 1 : 0;
}

truth_table product_with_parity(const truth_table& g) {
    check_arg(g.is_boolean() && g.d() == 2, "product_with_parity needs a boolean g");
    u32 m = g.n();
    return build_table(2 * m, 2, [&g, m](std::span<const u32> p) -> u32 {
        u32 par = 0;
        for (u32 i = 0; i < m; ++i) par ^= p[m + i];
        return g.eval(p.subspan(0, m)) & par;
    });
}

}  // namespace bpm::roster
