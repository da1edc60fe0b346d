#pragma once

#include <string>
#include <vector>

namespace nlslab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs criteria 1..12 (or the listed subset), writing every artifact
/// under dir. Each criterion is self-contained and order-independent.
std::vector<CriterionResult> run_acceptance_once(const std::string& dir,
                                                 const std::vector<int>& ids = {});

/// Full gate: criteria 1..12 executed twice (dir/main, dir/rerun) plus
/// criterion 13, which byte-compares every CSV between the two passes.
std::vector<CriterionResult> run_acceptance(const std::string& dir);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace nlslab
