#pragma once

#include <string>
#include <vector>

namespace umebmub {

/// Outcome of a numeric check. For scalar criteria `passed` holds exactly
/// when `max_abs_deviation <= tolerance`; composite checks (UMEB) carry one
/// sub-report per clause and pass when all clauses pass.
struct VerificationReport {
    bool passed = false;
    std::string criterion{};
    double target_value = 0.0;
    double max_abs_deviation = 0.0;
    std::vector<int> worst_index{};
    double tolerance = 0.0;
    std::string note{};
    std::vector<VerificationReport> clauses{};
};

}  // namespace umebmub
