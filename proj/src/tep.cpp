#include "bpm/tep.hpp"

#include <algorithm>
#include <chrono>

#include "bpm/subset_scan.hpp"

namespace bpm::tep {

u64 layout::input_size(u32 h, u32 k) {
    check_arg(h >= 1 && k >= 2, "TEP needs h >= 1, k >= 2");
    u64 n = 1;
    for (u32 i = 2; i <= h; ++i) n = 2 * n + u64(k) * k;
    return n;
}

layout::layout(u32 height, u32 alphabet) : h(height), k(alphabet) {
    u64 sz = input_size(h, k);
    check_arg(sz <= 63, "TEP layout beyond 63 variables");
    n = static_cast<u32>(sz);
}

layout::var_pos layout::classify(u32 var0) const {
    check_arg(var0 < n, "TEP variable out of range");
    if (h == 1) return {seg::left, var0};  // the lone leaf; callers treat h=1 specially
    u32 kk = k * k;
    u32 sub = static_cast<u32>(input_size(h - 1, k));
    if (var0 < kk) return {seg::root_matrix, var0};
    if (var0 < kk + sub) return {seg::left, var0 - kk};
    return {seg::right, var0 - kk - sub};
}

u64 layout::mask_M() const {
    if (h == 1) return 0;
    return (u64(1) << (k * k)) - 1;
}

u64 layout::mask_L() const {
    if (h == 1) return 1;
    u32 sub = static_cast<u32>(input_size(h - 1, k));
    return ((u64(1) << sub) - 1) << (k * k);
}

u64 layout::mask_R() const {
    if (h == 1) return 0;
    u32 sub = static_cast<u32>(input_size(h - 1, k));
    return ((u64(1) << sub) - 1) << (k * k + sub);
}

u64 layout::mirror_mask(u64 mask) const {
    if (h == 1) return mask;
    u32 kk = k * k;
    u32 sub = static_cast<u32>(input_size(h - 1, k));
    u64 out = 0;
    for (u32 v = 0; v < n; ++v) {
        if (!((mask >> v) & 1)) continue;
        var_pos p = classify(v);
        u32 tgt;
        switch (p.where) {
            case seg::root_matrix: {
                u32 i = p.offset / k, j = p.offset % k;
                tgt = j * k + i;  // transpose
                break;
            }
            case seg::left: tgt = kk + sub + p.offset; break;
            default: tgt = kk + p.offset; break;
        }
        out |= u64(1) << tgt;
    }
    return out;
}

u32 tep_eval(u32 h, u32 k, std::span<const u32> a) {
    check_arg(a.size() == layout::input_size(h, k), "TEP assignment size mismatch");
    for (u32 v : a) check_arg(v < k, "TEP symbol out of range");
    // recursive bottom-up evaluation over the preorder layout
    std::function<u32(u32, u32)> go = [&](u32 off, u32 height) -> u32 {
        if (height == 1) return a[off];
        u32 kk = k * k;
        u32 sub = static_cast<u32>(layout::input_size(height - 1, k));
        u32 vl = go(off + kk, height - 1);
        u32 vr = go(off + kk + sub, height - 1);
        return a[off + vl * k + vr];
    };
    return go(0, h);
}

truth_table tep_table(u32 h, u32 k) {
    u64 n = layout::input_size(h, k);
    check_arg(n <= 20, "full TEP table beyond budget");
    return build_table(static_cast<u32>(n), k,
                       [h, k](std::span<const u32> p) { return tep_eval(h, k, p); });
}

namespace {

s_profile_result profile_from_scan(const layout& lay, const subset_scan_result& scan,
                                   const std::vector<u32>& ells) {
    s_profile_result res;
    res.h = lay.h;
    res.k = lay.k;
    res.n = lay.n;
    auto layers = aggregate_layers(scan);
    for (u32 ell : ells) {
        profile_entry e;
        e.ell = ell;
        e.s_value = layers[ell].min_nrows;
        e.witness_mask = layers[ell].min_nrows_mask;
        e.max_mult = layers[ell].max_mult;
        e.mult_mask = layers[ell].max_mult_mask;
        e.complete = true;
        res.entries.push_back(e);
    }
    res.all_complete = true;
    for (const auto& e : res.entries)
        if (e.s_value > res.S) res.S = e.s_value;
    for (const auto& e : res.entries)
        if (e.s_value == res.S) res.argmax_ells.push_back(e.ell);
    return res;
}

}  // namespace

s_profile_result s_tep_profile(u32 h, u32 k, std::vector<u32> ells, double budget_secs) {
    layout lay(h, k);
    truth_table f = tep_table(h, k);
    if (ells.empty())
        for (u32 l = 1; l <= lay.n; ++l) ells.push_back(l);
    std::sort(ells.begin(), ells.end());
    for (u32 l : ells) check_arg(l >= 1 && l <= lay.n, "profile ell out of range");

    bool want_all = ells.size() == lay.n;
    if (budget_secs <= 0.0 && want_all && lay.n <= 20)
        return profile_from_scan(lay, scan_all_subsets(f), ells);

    // group-at-a-time budgeted path
    s_profile_result res;
    res.h = h;
    res.k = k;
    res.n = lay.n;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget_secs));
    bool out_of_time = false;
    for (u32 ell : ells) {
        profile_entry e;
        e.ell = ell;
        if (out_of_time ||
            (budget_secs > 0.0 && std::chrono::steady_clock::now() >= deadline)) {
            out_of_time = true;
            res.entries.push_back(e);
            continue;
        }
        std::vector<u64> masks = masks_of_size(lay.n, ell);
        struct agg {
            u64 nr = ~u64(0), nrm = 0, mu = 0, mum = 0;
            bool any = false;
        };
        std::vector<agg> chunks(64);
        parallel_for(masks.size(), [&](u64 b, u64 end, u32 chunk) {
            agg a;
            for (u64 i = b; i < end; ++i) {
                row_stats_t st = subset_stats(f, masks[i]);
                if (!a.any || st.nrows < a.nr ||
                    (st.nrows == a.nr && mask_lex_less(masks[i], a.nrm))) {
                    a.nr = st.nrows;
                    a.nrm = masks[i];
                }
                if (!a.any || st.mult > a.mu ||
                    (st.mult == a.mu && mask_lex_less(masks[i], a.mum))) {
                    a.mu = st.mult;
                    a.mum = masks[i];
                }
                a.any = true;
            }
            chunks[chunk] = a;
        });
        agg total;
        for (const agg& a : chunks) {
            if (!a.any) continue;
            if (!total.any || a.nr < total.nr ||
                (a.nr == total.nr && mask_lex_less(a.nrm, total.nrm))) {
                total.nr = a.nr;
                total.nrm = a.nrm;
            }
            if (!total.any || a.mu > total.mu ||
                (a.mu == total.mu && mask_lex_less(a.mum, total.mum))) {
                total.mu = a.mu;
                total.mum = a.mum;
            }
            total.any = true;
        }
        e.s_value = total.nr;
        e.witness_mask = total.nrm;
        e.max_mult = total.mu;
        e.mult_mask = total.mum;
        e.complete = true;
        res.entries.push_back(e);
    }
    res.all_complete = !out_of_time;
    for (const auto& e : res.entries)
        if (e.complete && e.s_value > res.S) res.S = e.s_value;
    for (const auto& e : res.entries)
        if (e.complete && e.s_value == res.S) res.argmax_ells.push_back(e.ell);
    return res;
}

shat_result s_hat_tep(u32 h, u32 k) {
    layout lay(h, k);
    s_profile_result prof = s_tep_profile(h, k);
    shat_result out;
    u64 pw = 1;
    u32 idx = 0;
    for (const auto& e : prof.entries) {
        pw *= k;
        ratio cand(pw, e.max_mult);
        if (idx == 0 || out.value < cand) {
            out.value = cand;
            out.witness_ell = e.ell;
            out.witness_mask = e.mult_mask;
        }
        ++idx;
    }
    check_invariant(ratio(k) <= out.value, "S_hat(TEP) fell below the unconditional bound k");
    // informative upper bound, hypothesis h <= log2 k
    u64 num = (u64(1) << ((u64(1) << (h - 1)) + 1)) * k;
    out.upper_bound = ratio(num, 3);
    out.hypothesis_holds = (u64(1) << h) <= k;
    return out;
}

// ---------------------------------------------------------------------------
// appendix lemma battery

namespace {

struct lemma_ctx {
    layout lay;
    truth_table f;        // (TEP,h)
    truth_table fl;       // (TEP,h-1), the child problem
    u32 kk, sub;

    lemma_ctx(u32 h, u32 k)
        : lay(h, k), f(tep_table(h, k)), fl(tep_table(h - 1, k)), kk(k * k),
          sub(static_cast<u32>(layout::input_size(h - 1, k))) {}

    u64 lift_L(u64 lmask) const { return lmask << kk; }
    u64 lift_R(u64 rmask) const { return rmask << (kk + sub); }
};

void add(std::vector<lemma_check>& cs, const std::string& name, bool pass,
         const std::string& detail) {
    cs.push_back({name, pass, detail});
}

// canonical ids of the rows of f_A (subfunction identity per row index)
std::vector<u32> row_ids(const truth_table& f, var_set A) {
    split_view v(f, A);
    std::vector<std::pair<std::vector<u32>, u64>> rows;
    rows.reserve(v.rows());
    std::vector<u32> tmp;
    for (u64 a = 0; a < v.rows(); ++a) {
        v.extract_row(a, tmp);
        rows.push_back({tmp, a});
    }
    std::sort(rows.begin(), rows.end());
    std::vector<u32> id(v.rows());
    u32 next = 0;
    for (u64 i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first != rows[i - 1].first) ++next;
        id[rows[i].second] = next;
    }
    return id;
}

// deterministic pseudo-random masks of a given popcount
std::vector<u64> sample_masks(u32 n, u32 pop, u32 count, u64 seed) {
    std::vector<u64> all = masks_of_size(n, pop);
    if (all.size() <= count) return all;
    std::vector<u64> out;
    u64 state = seed;
    for (u32 i = 0; i < count; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        out.push_back(all[(state >> 33) % all.size()]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool full_range_exists(const truth_table& f, u64 amask, u32 k) {
    split_view v(f, var_set(f.n(), amask));
    std::vector<u32> row;
    for (u64 a = 0; a < v.rows(); ++a) {
        v.extract_row(a, row);
        u64 seen = 0;
        for (u32 x : row) seen |= u64(1) << x;
        if (popcount64(seen) == static_cast<int>(k)) return true;
    }
    return false;
}

}  // namespace

std::vector<lemma_check> appendix_lemma_suite(u32 h, u32 k) {
    check_arg(h >= 2, "the appendix lemmas concern h >= 2");
    lemma_ctx ctx(h, k);
    const layout& lay = ctx.lay;
    std::vector<lemma_check> cs;

    // --- equivalence: A = (empty, A_L, A_R), subfunction equality is
    // componentwise equality of the child subfunctions
    {
        u64 bad = 0, tested = 0;
        std::vector<u64> lparts, rparts;
        u32 cap = (lay.n > 12) ? 3 : ctx.sub;  // exhaust small, sample large
        for (u32 a = 0; a <= std::min(cap, ctx.sub); ++a)
            for (u64 m : sample_masks(ctx.sub, a, 6, 11 + a))
                lparts.push_back(m);
        rparts = lparts;
        for (u64 lm : lparts)
            for (u64 rm : rparts) {
                u64 amask = ctx.lift_L(lm) | ctx.lift_R(rm);
                if (popcount64(amask) == 0) continue;
                std::vector<u32> big = row_ids(ctx.f, var_set(lay.n, amask));
                std::vector<u32> lid = row_ids(ctx.fl, var_set(ctx.fl.n(), lm));
                std::vector<u32> rid = row_ids(ctx.fl, var_set(ctx.fl.n(), rm));
                u64 rrows = u64(1);
                for (int i = 0; i < popcount64(rm); ++i) rrows *= k;
                for (u64 a = 0; a < big.size() && bad == 0; ++a)
                    for (u64 b = 0; b < big.size(); ++b) {
                        bool eq_big = big[a] == big[b];
                        bool eq_kids = lid[a / rrows] == lid[b / rrows] &&
                                       rid[a % rrows] == rid[b % rrows];
                        if (eq_big != eq_kids) { ++bad; break; }
                    }
                ++tested;
            }
        add(cs, "equivalence", bad == 0,
            std::to_string(tested) + " (A_L,A_R) splits, componentwise iff");
    }

    // --- easy-case: |A_L|, |A_R| <= n_{h-1} - 1  =>  nrows >= k^{|A_M|}
    {
        u64 bad = 0, tested = 0;
        for (u64 mm = 0; mm < (u64(1) << ctx.kk); ++mm) {
            std::vector<u64> ls = sample_masks(ctx.sub, std::min(ctx.sub - 1, 2u), 3, 5);
            ls.push_back(0);
            for (u64 lm : ls)
                for (u64 rm : ls) {
                    if (popcount64(lm) > static_cast<int>(ctx.sub) - 1) continue;
                    if (popcount64(rm) > static_cast<int>(ctx.sub) - 1) continue;
                    u64 amask = mm | ctx.lift_L(lm) | ctx.lift_R(rm);
                    if (amask == 0) continue;
                    u64 nr = subset_stats(ctx.f, amask).nrows;
                    u64 bound = 1;
                    for (int i = 0; i < popcount64(mm); ++i) bound *= k;
                    if (nr < bound) ++bad;
                    ++tested;
                }
        }
        add(cs, "easy-case", bad == 0, std::to_string(tested) + " splits, nrows >= k^|A_M|");
    }

    // --- one-row: A_L = L, |A_R| <= n_{h-1} - 1
    {
        u64 bad = 0, tested = 0;
        std::vector<u64> rs = sample_masks(ctx.sub, std::min(ctx.sub - 1, 2u), 3, 7);
        rs.push_back(0);
        for (u64 mm = 0; mm < (u64(1) << ctx.kk); ++mm) {
            std::vector<u32> r_of_row(k, 0);
            for (u32 e = 0; e < ctx.kk; ++e)
                if ((mm >> e) & 1) ++r_of_row[e / k];
            bool has_full = false;
            u64 sum_bound = 0;
            for (u32 i = 0; i < k; ++i) {
                if (r_of_row[i] == k) has_full = true;
                u64 t = 1;
                for (u32 j = 0; j < r_of_row[i]; ++j) t *= k;
                sum_bound += t;
            }
            u64 kk_pow = 1;
            for (u32 j = 0; j < k; ++j) kk_pow *= k;
            for (u64 rm : rs) {
                u64 amask = mm | ctx.lift_L((u64(1) << ctx.sub) - 1) | ctx.lift_R(rm);
                u64 nr = subset_stats(ctx.f, amask).nrows;
                u64 bound = has_full ? kk_pow : sum_bound;
                if (nr < bound) ++bad;
                ++tested;
            }
        }
        add(cs, "one-row", bad == 0,
            std::to_string(tested) + " splits with A_L = L, row-count bound");
    }

    // --- A_M-small: |A_M| <= k gives the product lower bound; A_M empty
    // gives equality
    {
        u64 bad_eq = 0, bad_ineq = 0, tested_eq = 0, tested_ineq = 0;
        u32 eq_cap = (lay.n > 12) ? 8 : lay.n;  // |A| cap for the equality scan
        for (u64 lm = 0; lm < (u64(1) << ctx.sub); ++lm)
            for (u64 rm = 0; rm < (u64(1) << ctx.sub); ++rm) {
                u32 pop = popcount64(lm) + popcount64(rm);
                if (pop == 0 || pop > eq_cap) continue;
                u64 amask = ctx.lift_L(lm) | ctx.lift_R(rm);
                u64 nr = subset_stats(ctx.f, amask).nrows;
                u64 nl = subset_stats(ctx.fl, lm).nrows;
                u64 nrr = subset_stats(ctx.fl, rm).nrows;
                if (nr != nl * nrr) ++bad_eq;
                ++tested_eq;
            }
        for (u32 msz = 1; msz <= k; ++msz)
            for (u64 mm : sample_masks(ctx.kk, msz, 4, 17 + msz))
                for (u64 lm : sample_masks(ctx.sub, std::min(ctx.sub, 2u), 3, 29))
                    for (u64 rm : sample_masks(ctx.sub, std::min(ctx.sub, 1u), 3, 31)) {
                        u64 amask = mm | ctx.lift_L(lm) | ctx.lift_R(rm);
                        u64 nr = subset_stats(ctx.f, amask).nrows;
                        u64 nl = subset_stats(ctx.fl, lm).nrows;
                        u64 nrr = subset_stats(ctx.fl, rm).nrows;
                        if (nr < nl * nrr) ++bad_ineq;
                        ++tested_ineq;
                    }
        add(cs, "A_M-small-equality", bad_eq == 0,
            std::to_string(tested_eq) + " A_M-empty splits, nrows product equality");
        add(cs, "A_M-small-inequality", bad_ineq == 0,
            std::to_string(tested_ineq) + " small-A_M splits, product lower bound");
    }

    // --- half-size: the proof's subset achieves the constant-subfunction
    // probability bound for every value
    {
        u64 bad = 0, tested = 0;
        u64 denom_factor = u64(1) << ((u64(1) << (h - 1)) - 1);  // 2^(2^(h-1)-1)
        u32 lo = static_cast<u32>((lay.n + 1) / 2 + (u64(1) << (h - 2)));
        for (u32 ell = lo; ell <= lay.n; ++ell) {
            u64 amask = 0;
            // greedy recipe from the proof: all leaves, half of every matrix,
            // then distribute the spare entries top-down
            std::function<void(u32, u32, u32)> base = [&](u32 off, u32 height, u32) {
                if (height == 1) {
                    amask |= u64(1) << off;
                    return;
                }
                u32 kk = k * k;
                u32 take = (height == h) ? (kk + 1) / 2 : (kk + 1) / 2;
                for (u32 e = 0; e < take; ++e) amask |= u64(1) << (off + e);
                u32 s = static_cast<u32>(layout::input_size(height - 1, k));
                base(off + kk, height - 1, 0);
                base(off + kk + s, height - 1, 0);
            };
            base(0, h, 0);
            // pad with unused matrix entries until |A| = ell (root first)
            for (u32 v = 0; v < lay.n && popcount64(amask) < static_cast<int>(ell); ++v)
                amask |= u64(1) << v;
            if (popcount64(amask) != static_cast<int>(ell)) continue;  // ell below base size
            split_view v(ctx.f, var_set(lay.n, amask));
            std::vector<u64> const_count(k, 0);
            std::vector<u32> row;
            for (u64 a = 0; a < v.rows(); ++a) {
                v.extract_row(a, row);
                bool corow = std::all_of(row.begin(), row.end(),
                                         [&](u32 x) { return x == row[0]; });
                if (corow) ++const_count[row[0]];
            }
            for (u32 i = 0; i < k; ++i) {
                // count / k^ell >= 1 / (denom_factor * k)
                ratio lhs(const_count[i], 1);
                bool ok = lhs.num * denom_factor * k >= v.rows();
                if (!ok) ++bad;
                ++tested;
            }
        }
        add(cs, "half-size", bad == 0,
            std::to_string(tested) + " (ell, value) pairs, constant-row probability");
    }

    // --- non-constant-subfunc: some full-range subfunction exists for every
    // proper A
    {
        u64 bad = 0, tested = 0;
        std::vector<u64> masks;
        if (lay.n <= 6) {
            for (u64 m = 0; m + 1 < (u64(1) << lay.n); ++m) masks.push_back(m);
        } else {
            for (u32 pop = 0; pop + 1 <= lay.n; ++pop)
                for (u64 m : sample_masks(lay.n, pop, 4, 41 + pop)) masks.push_back(m);
            // all co-singletons
            u64 full = (u64(1) << lay.n) - 1;
            for (u32 v = 0; v < lay.n; ++v) masks.push_back(full & ~(u64(1) << v));
        }
        for (u64 m : masks) {
            if (popcount64(m) == static_cast<int>(lay.n)) continue;
            if (!full_range_exists(ctx.f, m, k)) ++bad;
            ++tested;
        }
        add(cs, "full-range", bad == 0,
            std::to_string(tested) + " proper subsets, full-range witness exists");
    }

    return cs;
}

}  // namespace bpm::tep
