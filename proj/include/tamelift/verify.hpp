#pragma once

// The end-to-end verification battery: one claim per acceptance item, each
// checked at its pinned expected values and time budget.  Shared by the
// command-line `verify-all` and the acceptance test binary.

#include <string>
#include <vector>

namespace tamelift {

struct ClaimResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    unsigned shards = 1;
    std::string scenario_dir;
    uint64_t seed = 0x5eed5eedULL;
    std::string claim_filter;  // run only claims whose id starts with this
};

std::vector<ClaimResult> run_verification(const VerifyOptions& opts);
bool all_passed(const std::vector<ClaimResult>& results);

}  // namespace tamelift
