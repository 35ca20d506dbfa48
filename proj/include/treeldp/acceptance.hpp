#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace treeldp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the ten acceptance criteria, printing one PASS/FAIL line per
/// criterion to `log`. Thresholds are fixed in code; see the suite source.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace treeldp
