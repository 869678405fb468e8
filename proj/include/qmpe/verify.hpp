#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmpe {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Seed-pinned invariant suites of every module; deterministic across runs.
// Writes one line per check to `log` when given.
std::vector<CheckResult> run_verification(unsigned seed = 12345u, std::ostream* log = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace qmpe
