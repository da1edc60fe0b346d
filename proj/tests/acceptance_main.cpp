#include <cstdio>

#include "nlslab/acceptance.hpp"

int main() {
    const auto results = nlslab::run_acceptance("acceptance_artifacts");
    for (const auto& r : results) {
        std::printf("[%s] %2d %-32s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
    }
    const bool ok = nlslab::all_pass(results);
    std::printf("%s\n", ok ? "ALL PASS" : "FAILURES PRESENT");
    return ok ? 0 : 1;
}
