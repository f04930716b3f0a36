#pragma once

#include <string>
#include <vector>

#include "bpm/common.hpp"

namespace bpm::accept {

struct criterion_result {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

criterion_result c1_relations_n3();
criterion_result c2_tep_s2(u32 k);  // k in {2, 3}
criterion_result c3_tep_s3();
criterion_result c4_tep_shat();
criterion_result c5_obdd_sandwich();
criterion_result c6_tseitin();
criterion_result c7_geometry_mbs();
criterion_result c8_galbw();
criterion_result c9_gen_projection();
criterion_result c10_random_shat();

std::vector<criterion_result> run_all();
// tep | tseitin | geometry | genred | obdd | random-shat
std::vector<criterion_result> run_suite(const std::string& name);

}  // namespace bpm::accept
