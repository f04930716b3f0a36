#include <algorithm>
#include <unordered_set>

#include "bpm/measures.hpp"
#include "solver.hpp"

namespace bpm {

namespace {

// Implicant over n bits: positions outside `care` are dashes.
struct implicant {
    u32 care = 0;
    u32 vals = 0;
    friend bool operator==(const implicant& a, const implicant& b) {
        return a.care == b.care && a.vals == b.vals;
    }
};
struct implicant_hash {
    size_t operator()(const implicant& t) const {
        return (u64(t.care) << 32 | t.vals) * 0x9e3779b97f4a7c15ull >> 32;
    }
};

u64 min_dnf_terms(const truth_table& f) {
    check_arg(f.d() == 2 && f.is_boolean(), "two-level sizes need boolean functions");
    u32 n = f.n();
    std::vector<u32> minterms;
    for (u64 x = 0; x < f.size(); ++x)
        if (f.at(x)) minterms.push_back(static_cast<u32>(x));
    if (minterms.empty()) return 0;               // empty disjunction
    if (minterms.size() == f.size()) return 1;    // the empty term

    u32 full = (n == 32) ? ~0u : ((u32(1) << n) - 1);
    std::unordered_set<implicant, implicant_hash> level, primes_set;
    for (u32 m : minterms) level.insert({full, m});
    while (!level.empty()) {
        std::unordered_set<implicant, implicant_hash> next;
        std::unordered_set<implicant, implicant_hash> used;
        for (const implicant& t : level) {
            u32 bits = t.care;
            while (bits) {
                u32 b = bits & (~bits + 1);
                bits &= bits - 1;
                implicant partner{t.care, t.vals ^ b};
                if (level.count(partner)) {
                    next.insert({t.care & ~b, t.vals & ~b});
                    used.insert(t);
                    used.insert(partner);
                }
            }
        }
        for (const implicant& t : level)
            if (!used.count(t)) primes_set.insert(t);
        level = std::move(next);
    }
    std::vector<implicant> primes(primes_set.begin(), primes_set.end());
    std::sort(primes.begin(), primes.end(), [](const implicant& a, const implicant& b) {
        if (a.care != b.care) return a.care < b.care;
        return a.vals < b.vals;
    });

    std::vector<solver::bitset> sets;
    sets.reserve(primes.size());
    u32 universe = static_cast<u32>(minterms.size());
    for (const implicant& t : primes) {
        solver::bitset s(universe);
        for (u32 i = 0; i < universe; ++i)
            if ((minterms[i] & t.care) == t.vals) s.set(i);
        sets.push_back(std::move(s));
    }
    solver::cover_solution sol = solver::exact_set_cover(universe, sets);
    check_invariant(sol.feasible, "prime implicants fail to cover the minterms");
    if (sol.size > 0) {
        solver::cover_solution tighter = solver::exact_set_cover(universe, sets, sol.size - 1);
        check_invariant(!tighter.feasible, "two-level cover not minimal");
    }
    return sol.size;
}

}  // namespace

weight_report weight(const truth_table& f) {
    check_arg(f.n() <= 10, "weight limited to 10 variables");
    weight_report rep;
    rep.dnf_size = min_dnf_terms(f);
    rep.cnf_size = min_dnf_terms(combine(combine_op::negate, f));
    rep.weight = rep.dnf_size + rep.cnf_size;
    return rep;
}

}  // namespace bpm
