#include "manifest.hpp"

#include <openssl/evp.h>

#include <gmp.h>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sqconf::tools {

std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

namespace {

nlohmann::ordered_json stable_part(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["parameters"] = m.arguments;
    j["versions"] = {{"sqconf", "1.0.0"}, {"gmp", gmp_version}, {"compiler", __VERSION__}};
    j["outputs"] = m.outputs;
    j["exit_code"] = m.exit_code;
    return j;
}

}  // namespace

std::string RunManifest::digest() const { return sha256_hex(stable_part(*this).dump()); }

std::string RunManifest::to_json() const {
    auto j = stable_part(*this);
    j["timing"] = {{"wall_ms", wall_ms}};
    j["digest"] = digest();
    return j.dump(2) + "\n";
}

}  // namespace sqconf::tools
