#pragma once

#include <string>
#include <vector>

namespace wpt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast analytic property suite behind `wptsim selftest`.
std::vector<CheckResult> run_selftest();

} // namespace wpt
