#pragma once

#include <string>
#include <vector>

namespace fdo::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Run the full acceptance suite (or a single criterion when id > 0).
// Each criterion is self-contained and prints nothing; the caller renders
// one pass/fail line per result.
std::vector<CriterionResult> run(int only_id = 0);

// "PASS  3  ..." lines to stdout; returns true when everything passed.
bool report(const std::vector<CriterionResult>& results);

} // namespace fdo::acceptance
