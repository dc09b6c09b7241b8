#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pfp {

struct SuiteCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<SuiteCheck> checks;
    bool ok() const;
};

/// Names accepted by run_suites besides "all".
std::vector<std::string> suite_names();

/// Randomized invariant checks per module, seeded by `seed`.
std::vector<SuiteResult> run_suites(const std::string& which, std::uint64_t seed);

nlohmann::json suite_json(const std::vector<SuiteResult>& results);

} // namespace pfp
