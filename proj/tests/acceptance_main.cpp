// Acceptance suite: runs every verification claim at its pinned expected
// values and prints one pass/fail line per claim.  Exits nonzero if any
// claim fails.

#include <cstdio>

#include "tamelift/verify.hpp"

int main() {
    tamelift::VerifyOptions opts;
    opts.scenario_dir = TAMELIFT_SCENARIO_DIR;
    auto results = tamelift::run_verification(opts);
    for (const auto& r : results) {
        std::printf("%s %-28s [%6dms] %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    int(r.seconds * 1000), r.detail.c_str());
    }
    bool ok = tamelift::all_passed(results);
    std::printf("%s\n", ok ? "acceptance: all claims passed"
                           : "acceptance: FAILURES present (see lines above)");
    return ok ? 0 : 1;
}
