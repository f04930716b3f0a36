#include "bpm/report.hpp"

#include <cmath>

namespace bpm {

using nlohmann::ordered_json;

ordered_json to_json(const rect_certificate& cert) {
    ordered_json j;
    j["kind"] = cert.kind == cert_kind::cover ? "cover" : "partition";
    ordered_json parts = ordered_json::array();
    for (const rect_part& p : cert.parts) {
        ordered_json pj;
        pj["A"] = p.A.indices();
        pj["g"] = p.g.values();
        pj["h"] = p.h.values();
        parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
    return j;
}

ordered_json to_json(const measure_report& rep) {
    ordered_json j;
    j["measure"] = rep.measure;
    j["value_num"] = rep.value.num;
    if (rep.value.den != 1) j["value_den"] = rep.value.den;
    if (rep.measure == "NCC") {
        // the value is the integer whose log2 the measure reports
        if (rep.value.num == 0)
            j["log2_value"] = nullptr;
        else
            j["log2_value"] = std::log2(static_cast<double>(rep.value.num));
    }
    j["witness_k"] = rep.witness_k;
    j["witness_A"] = mask_to_indices(rep.witness_A);
    if (rep.certificate) j["certificate"] = to_json(*rep.certificate);
    return j;
}

ordered_json to_json(const relation_outcome& out) {
    ordered_json j;
    j["n"] = out.values.n;
    j["S"] = out.values.S;
    j["Shat_num"] = out.values.S_hat.num;
    j["Shat_den"] = out.values.S_hat.den;
    j["C"] = out.values.C;
    j["Chat"] = out.values.C_hat;
    j["P"] = out.values.P;
    j["Phat"] = out.values.P_hat;
    j["CC"] = out.values.CC;
    j["NCC_count"] = out.values.NCC_count;
    ordered_json checks = ordered_json::array();
    for (const relation_check& c : out.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["all_pass"] = out.all_pass;
    return j;
}

}  // namespace bpm
