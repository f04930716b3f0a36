#pragma once

#include <json.hpp>

#include "bpm/measures.hpp"

namespace bpm {

inline constexpr const char* report_schema = "bpm-report/1";

nlohmann::ordered_json to_json(const rect_certificate& cert);
nlohmann::ordered_json to_json(const measure_report& rep);
nlohmann::ordered_json to_json(const relation_outcome& out);

}  // namespace bpm
