// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run at their stated budgets; nothing is downscaled here.

#include <cstdio>

#include "mfsb/claims.hpp"

int main() {
    mfsb::claims::Budget budget;
    budget.quick = false;
    budget.threads = 0;

    int failures = 0;
    int index = 0;
    for (const auto& spec : mfsb::claims::all_claims()) {
        if (!spec.acceptance) continue;
        ++index;
        const auto res = mfsb::claims::run_claim(spec, budget);
        if (!res.pass) ++failures;
        std::printf("[%s] C%02d %-26s %8.2fs  %s\n", res.pass ? "PASS" : "FAIL", index,
                    spec.id.c_str(), res.seconds, res.detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
