#include "mrfse/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "mrfse/errors.hpp"

namespace mrfse {

nlohmann::json manifest_to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["tool_version"] = m.tool_version;
    j["input_digest"] = m.input_digest;
    return j;
}

std::string sha256_hex(const void* data, std::size_t size) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    if (EVP_Digest(data, size, digest, &digest_len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest_len * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_hex(const std::string& bytes) { return sha256_hex(bytes.data(), bytes.size()); }

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

}  // namespace mrfse
