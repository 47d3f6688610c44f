#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace numfrac::verify {

struct Options {
    std::string suite = "all";
    std::uint64_t n_max = 1000000;
    std::uint64_t seed = 12345;
    bool inject_fault = false; // test-harness hook: corrupts one identity check
};

struct CheckResult {
    std::string name;
    bool pass;
    nlohmann::json detail;
};

// Runs the selected invariant suites. Every randomized check records the seed
// it drew from, so a failing run replays exactly.
std::vector<CheckResult> run(const Options& options);

} // namespace numfrac::verify
