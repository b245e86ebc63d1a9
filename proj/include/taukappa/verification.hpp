#pragma once

#include <string>
#include <vector>

namespace taukappa {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // filled in on failure
};

enum class Suite { Engine, Dfiz, Lemma2, M04, All };

// Runs the acceptance checks of the given suite; All covers all eleven.
std::vector<CheckResult> run_acceptance(Suite suite);

// All descending multisets of `size` non-negative integers summing to `total`.
std::vector<std::vector<int>> descending_multisets(int size, long total);

}  // namespace taukappa
