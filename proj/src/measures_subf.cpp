#include <algorithm>

#include "bpm/measures.hpp"

namespace bpm {

namespace {

// alpha/beta coordinates of global index x under the split (A, ~A)
struct coord_map {
    std::vector<u64> alpha, beta;
    coord_map(u32 n, u32 d, var_set A) {
        u64 sz = 1;
        for (u32 i = 0; i < n; ++i) sz *= d;
        alpha.assign(sz, 0);
        beta.assign(sz, 0);
        std::vector<u64> pa(n, 0), pb(n, 0);
        u64 pl = 1;
        for (u32 j = n; j-- > 0;)
            if (A.contains(j + 1)) { pa[j] = pl; pl *= d; }
        pl = 1;
        for (u32 j = n; j-- > 0;)
            if (!A.contains(j + 1)) { pb[j] = pl; pl *= d; }
        std::vector<u32> dig(n, 0);
        u64 a = 0, b = 0;
        for (u64 x = 0;; ++x) {
            alpha[x] = a;
            beta[x] = b;
            if (x + 1 == sz) break;
            for (u32 j = n; j-- > 0;) {
                if (++dig[j] < d) {
                    if (pa[j]) a += pa[j]; else b += pb[j];
                    break;
                }
                dig[j] = 0;
                if (pa[j]) a -= pa[j] * (d - 1); else b -= pb[j] * (d - 1);
            }
        }
    }
};

}  // namespace

truth_table rect_certificate::reconstruct(u32 n, u32 d) const {
    u64 sz = checked_pow(d, n, cell_budget());
    std::vector<u32> acc(sz, 0);
    std::vector<u8> covered(sz, 0);
    for (const rect_part& p : parts) {
        check_invariant(p.A.n == n, "certificate part arity mismatch");
        check_invariant(p.g.is_boolean(), "certificate selector must be boolean");
        check_invariant(p.g.n() == p.A.count() && p.h.n() == n - p.A.count(),
                        "certificate part shape mismatch");
        coord_map cm(n, d, p.A);
        for (u64 x = 0; x < sz; ++x) {
            u32 v = p.g.at(cm.alpha[x]) * p.h.at(cm.beta[x]);
            if (v == 0) continue;
            if (kind == cert_kind::partition)
                check_invariant(!covered[x], "partition parts overlap");
            covered[x] = 1;
            acc[x] = (kind == cert_kind::cover) ? (acc[x] | (v ? 1 : 0)) : acc[x] + v;
        }
    }
    return truth_table(n, d, std::move(acc));
}

void rect_certificate::verify_against(const truth_table& target) const {
    truth_table r = reconstruct(target.n(), target.d());
    check_invariant(r == target, "certificate does not reconstruct its target");
}

measure_report measure_S(const truth_table& f) {
    if (f.n() > 20) throw resource_error("measure S: arity beyond subset-scan budget");
    measure_report rep;
    rep.measure = "S";
    if (f.n() == 0) {
        rep.value = ratio(1);
        return rep;
    }
    auto layers = aggregate_layers(scan_all_subsets(f));
    u64 best = 0;
    for (u32 k = 1; k <= f.n(); ++k) {
        if (layers[k].min_nrows > best) {
            best = layers[k].min_nrows;
            rep.witness_k = k;
            rep.witness_A = layers[k].min_nrows_mask;
        }
    }
    rep.value = ratio(best);
    return rep;
}

measure_report measure_S_hat(const truth_table& f) {
    if (f.n() > 20) throw resource_error("measure S_hat: arity beyond subset-scan budget");
    measure_report rep;
    rep.measure = "Shat";
    if (f.n() == 0) {
        rep.value = ratio(1);
        return rep;
    }
    auto layers = aggregate_layers(scan_all_subsets(f));
    ratio best(0);
    u64 pw = 1;
    for (u32 k = 1; k <= f.n(); ++k) {
        pw *= f.d();
        ratio cand(pw, layers[k].max_mult);
        if (rep.witness_k == 0 || best < cand) {
            best = cand;
            rep.witness_k = k;
            rep.witness_A = layers[k].max_mult_mask;
        }
    }
    rep.value = best;
    return rep;
}

sstar_report measure_S_star(const truth_table& f) {
    check_arg(f.n() >= 1, "S* needs at least one variable");
    if (f.n() > 13) throw resource_error("measure S*: arity beyond subset-DP budget");
    subset_scan_result scan = scan_all_subsets(f);
    u64 full = (u64(1) << f.n()) - 1;
    // g(T) = max(nrows(f_T), min_{v in T} g(T \ v)); chain cost to reach T.
    std::vector<u32> g(full + 1, 0);
    std::vector<u8> pick(full + 1, 0);
    for (u64 t = 1; t <= full; ++t) {
        u32 inner = ~0u;
        u8 arg = 0;
        u64 rest = t;
        while (rest) {
            u32 v = static_cast<u32>(ctz64(rest));
            rest &= rest - 1;
            u32 sub = g[t & ~(u64(1) << v)];
            if (sub < inner) {
                inner = sub;
                arg = static_cast<u8>(v);
            }
        }
        g[t] = std::max(scan.nrows[t], inner);
        pick[t] = arg;
    }
    sstar_report rep;
    rep.value = g[full];
    u64 t = full;
    while (t) {
        rep.order.push_back(pick[t] + 1);
        t &= ~(u64(1) << pick[t]);
    }
    std::reverse(rep.order.begin(), rep.order.end());
    return rep;
}

bool is_m_mixed(const truth_table& f, u32 m) {
    check_arg(m >= 1 && m <= f.n(), "mixedness parameter out of range");
    for (u64 mask : masks_of_size(f.n(), m))
        if (subset_stats(f, mask).mult != 1) return false;
    return true;
}

}  // namespace bpm
