#pragma once

#include <string>
#include <vector>

namespace corpuscle {

struct SelfTestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast invariant checks across all modules; used by the CLI selftest command.
std::vector<SelfTestResult> run_selftests();

}  // namespace corpuscle
