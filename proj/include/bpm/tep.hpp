#pragma once

#include "bpm/truth_table.hpp"

namespace bpm::tep {

// Variable layout for the height-h tree over alphabet [k]: root matrix in
// row-major order, then the left subtree recursively, then the right.
// Symbols are 0-based internally, 1-based in every report.
struct layout {
    u32 h = 0, k = 0, n = 0;

    layout(u32 height, u32 alphabet);
    static u64 input_size(u32 h, u32 k);  // n_h = (2^(h-1)-1)k^2 + 2^(h-1)

    enum class seg : u8 { root_matrix, left, right };
    struct var_pos {
        seg where;
        u32 offset;  // index inside the segment
    };
    var_pos classify(u32 var0) const;  // 0-based variable

    // masks of the three segments inside [n]
    u64 mask_M() const;
    u64 mask_L() const;
    u64 mask_R() const;

    // the subtree-swap-with-root-transpose automorphism on variable masks
    u64 mirror_mask(u64 mask) const;
};

u32 tep_eval(u32 h, u32 k, std::span<const u32> a);  // 0-based symbols
truth_table tep_table(u32 h, u32 k);

struct profile_entry {
    u32 ell = 0;
    u64 s_value = 0;      // min over |A| = ell of nrows
    u64 witness_mask = 0;
    u64 max_mult = 0;     // max over |A| = ell of mult (for S_hat)
    u64 mult_mask = 0;
    bool complete = false;
};

struct s_profile_result {
    u32 h = 0, k = 0, n = 0;
    std::vector<profile_entry> entries;  // one per requested ell, ascending
    u64 S = 0;                           // max over complete entries
    std::vector<u32> argmax_ells;
    bool all_complete = false;
};

// ells empty = all of 1..n_h. budget_secs <= 0 = unbounded. An ell group is
// either finished whole or reported incomplete; nothing partial inside one.
s_profile_result s_tep_profile(u32 h, u32 k, std::vector<u32> ells = {},
                               double budget_secs = 0.0);

struct shat_result {
    ratio value;
    u32 witness_ell = 0;
    u64 witness_mask = 0;
    ratio upper_bound;        // (2^(2^(h-1)+1)/3) * k, informative
    bool hypothesis_holds = false;  // h <= log2 k, the bound's hypothesis
};
shat_result s_hat_tep(u32 h, u32 k);

struct lemma_check {
    std::string name;
    bool pass = false;
    std::string detail;
};
std::vector<lemma_check> appendix_lemma_suite(u32 h, u32 k);

}  // namespace bpm::tep
