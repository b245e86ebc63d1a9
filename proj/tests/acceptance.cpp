// Acceptance gate: one pass/fail line per criterion.
#include <cstdio>

#include "taukappa/verification.hpp"

int main() {
    const auto results = taukappa::run_acceptance(taukappa::Suite::All);
    bool all_pass = true;
    for (const auto& result : results) {
        all_pass = all_pass && result.pass;
        std::printf("%s criterion %s%s%s\n", result.pass ? "PASS" : "FAIL", result.name.c_str(),
                    result.pass ? "" : "  ", result.detail.c_str());
    }
    std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
