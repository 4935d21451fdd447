#pragma once

// Executable acceptance suite shared by the `verify` command and the
// acceptance test binary.

#include <string>
#include <vector>

namespace knot::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Runs criterion `id` (1..9). Exceptions inside a criterion count as failure.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all();

}  // namespace knot::acceptance
