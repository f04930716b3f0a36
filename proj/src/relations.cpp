#include <algorithm>

#include "bpm/measures.hpp"

namespace bpm {

namespace {

u64 pow2_clamped(u64 e) { return e >= 63 ? ~u64(0) : (u64(1) << e); }

void add(std::vector<relation_check>& cs, const std::string& name, bool pass,
         const std::string& detail) {
    cs.push_back({name, pass, detail});
}

std::string num(u64 v) { return std::to_string(v); }

}  // namespace

relation_values compute_relation_values(const truth_table& f) {
    check_arg(f.is_boolean() && f.d() == 2, "relation suite runs on boolean functions");
    if (f.n() > 6) throw resource_error("relation suite limited to 6 variables");
    relation_values v;
    v.n = f.n();
    v.S = measure_S(f).value.num;
    v.S_hat = measure_S_hat(f).value;
    v.C = measure_C(f).value.num;
    v.C_hat = measure_C_hat(f).value.num;
    v.P = measure_P(f).value.num;
    v.P_hat = measure_P_hat(f).value.num;
    v.CC = measure_CC(f).value.num;
    v.NCC_count = measure_NCC(f).value.num;
    truth_table nf = combine(combine_op::negate, f);
    v.S_hat_neg = measure_S_hat(nf).value;
    v.P_hat_neg = measure_P_hat(nf).value.num;
    return v;
}

std::vector<relation_check> check_relations(const relation_values& v) {
    std::vector<relation_check> cs;
    add(cs, "Shat<=S", v.S_hat <= ratio(v.S), v.S_hat.str() + " vs " + num(v.S));
    add(cs, "Chat<=C", v.C_hat <= v.C, num(v.C_hat) + " vs " + num(v.C));
    add(cs, "Phat<=P", v.P_hat <= v.P, num(v.P_hat) + " vs " + num(v.P));
    add(cs, "Chat<=Phat", v.C_hat <= v.P_hat, num(v.C_hat) + " vs " + num(v.P_hat));
    add(cs, "C<=P", v.C <= v.P, num(v.C) + " vs " + num(v.P));

    add(cs, "P<=2S", v.P <= 2 * v.S, num(v.P) + " vs 2*" + num(v.S));
    add(cs, "S<=2^C", v.S <= pow2_clamped(v.C), num(v.S) + " vs 2^" + num(v.C));

    // the exact inequality behind S(f) = O(2^n/n)
    u64 bound = 0;
    for (u32 k = 1; k <= v.n; ++k) {
        u64 lhs = pow2_clamped(k);
        u64 rhs = (v.n - k >= 6) ? ~u64(0) : pow2_clamped(u64(1) << (v.n - k));
        bound = std::max(bound, std::min(lhs, rhs));
    }
    add(cs, "S<=max_k min(2^k,2^2^(n-k))", v.S <= bound, num(v.S) + " vs " + num(bound));
    add(cs, "P<=2^(n/2+1)", v.P <= pow2_clamped(1 + v.n / 2),
        num(v.P) + " vs 2^" + num(1 + v.n / 2));

    // the max-min chain, compared on the underlying integers
    add(cs, "logC==NCC", v.C == v.NCC_count, num(v.C) + " vs " + num(v.NCC_count));
    add(cs, "NCC<=logP", v.NCC_count <= v.P, num(v.NCC_count) + " vs " + num(v.P));
    add(cs, "logP<=CC", v.P <= pow2_clamped(v.CC), num(v.P) + " vs 2^" + num(v.CC));
    add(cs, "CC<=1+logS", pow2_clamped(v.CC) <= 2 * v.S, "2^" + num(v.CC) + " vs 2*" + num(v.S));
    add(cs, "NCC<=CC", v.NCC_count <= pow2_clamped(v.CC),
        num(v.NCC_count) + " vs 2^" + num(v.CC));
    add(cs, "2CC<=n+2", 2 * v.CC <= v.n + 2, num(v.CC) + " vs (n+2)/2");

    add(cs, "Shat(f)==Shat(~f)", v.S_hat == v.S_hat_neg,
        v.S_hat.str() + " vs " + v.S_hat_neg.str());
    add(cs, "Phat(f)==Phat(~f)", v.P_hat == v.P_hat_neg,
        num(v.P_hat) + " vs " + num(v.P_hat_neg));
    return cs;
}

relation_outcome relation_suite(const truth_table& f) {
    relation_outcome out;
    out.values = compute_relation_values(f);
    out.checks = check_relations(out.values);
    for (const auto& c : out.checks) out.all_pass = out.all_pass && c.pass;
    return out;
}

}  // namespace bpm
