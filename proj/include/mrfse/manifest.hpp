#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace mrfse {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Provenance record embedded in (or written alongside) every artifact.
/// `parameters` holds the semantic inputs of the command; execution details
/// such as the thread count are excluded so reruns with different parallelism
/// stay byte-identical.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string input_digest;
};

nlohmann::json manifest_to_json(const RunManifest& m);

/// Lowercase hex SHA-256.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(const std::string& bytes);

/// Digest of a file's raw bytes.
std::string sha256_file(const std::string& path);

}  // namespace mrfse
