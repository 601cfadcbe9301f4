#pragma once

#include <map>
#include <string>
#include <vector>

namespace sqconf::tools {

std::string sha256_hex(const std::string& data);

// Record of one CLI invocation. The digest covers everything except timing,
// so identical invocations give identical digests.
struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    std::map<std::string, std::string> outputs;  // name -> sha256
    double wall_ms = 0;
    int exit_code = 0;

    std::string digest() const;
    std::string to_json() const;
};

}  // namespace sqconf::tools
