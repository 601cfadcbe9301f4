#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sqconf::tools {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    int samples = 10000;
};

const std::vector<std::string>& suite_names();
// Throws InputError for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace sqconf::tools
