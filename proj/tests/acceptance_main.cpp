// Acceptance battery: one pass/fail line per criterion.

#include <cstdio>

#include "bpm/acceptance.hpp"

int main() {
    auto results = bpm::accept::run_all();
    int idx = 0, passed = 0;
    for (const auto& r : results) {
        ++idx;
        if (r.pass) ++passed;
        std::printf("[%s] criterion %d: %s (%.1fs)\n    %s\n", r.pass ? "PASS" : "FAIL", idx,
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    }
    bool all = passed == idx;
    std::printf("%s: %d/%d criteria pass\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", passed,
                idx);
    return all ? 0 : 1;
}
