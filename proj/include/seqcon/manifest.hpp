#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqcon/errors.hpp"

namespace seqcon {

inline constexpr const char* kToolVersion = "0.1.0";

/**
 * Provenance record written once per output directory. The digest covers the
 * resolved configuration, seed and paths, never the timestamps, so re-running
 * with identical inputs yields an identical digest.
 */
struct RunManifest {
    std::string subcommand;
    nlohmann::json config;  // full resolved configuration
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string tool_version = kToolVersion;
    std::string started_utc;
    std::string finished_utc;
    std::string config_digest;  // filled by save_manifest
};

// FNV-1a 64 over the canonical dump of the hashed region, as 16 hex digits.
std::string manifest_digest(const RunManifest& manifest);

// Writes <dir>/manifest.json.
void save_manifest(const RunManifest& manifest, const std::string& dir);
RunManifest load_manifest(const std::string& path);

std::string utc_timestamp();

} // namespace seqcon
