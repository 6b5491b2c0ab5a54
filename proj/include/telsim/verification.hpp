// verification.hpp
// The built-in verification suite: every claim the simulator is designed to
// reproduce, pinned to a fixed tolerance and runnable from the CLI or from
// the acceptance test binary.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace telsim {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    // reduces the statistical sample sizes to 10^4; the sigma-based gates
    // widen accordingly
    bool quick = false;
};

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& options = {});

}  // namespace telsim
