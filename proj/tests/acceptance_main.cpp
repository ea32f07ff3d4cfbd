// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Criteria with a wall-time budget enforce it here.

#include <cstdio>
#include <map>

#include "tiltkit/suite.hpp"

int main() {
    const std::map<int, double> time_limits = {{1, 5.0}, {3, 10.0}, {4, 1.0}, {7, 10.0}};

    auto results = tiltkit::run_acceptance_suite(42);
    int failures = 0;
    for (const auto& r : results) {
        bool in_time = true;
        auto limit = time_limits.find(r.id);
        if (limit != time_limits.end() && r.seconds > limit->second) in_time = false;
        bool pass = r.pass && in_time;
        if (!pass) ++failures;
        std::printf("[%s] criterion %2d: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds,
                    in_time ? "" : " -- exceeded the stated time budget");
        if (!r.pass) std::printf("       %s\n", r.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", static_cast<int>(results.size()) - failures,
                static_cast<int>(results.size()));
    return failures == 0 ? 0 : 1;
}
