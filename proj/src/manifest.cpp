#include "seqcon/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace seqcon {

using nlohmann::json;

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string manifest_digest(const RunManifest& manifest) {
    json hashed;
    hashed["subcommand"] = manifest.subcommand;
    hashed["config"] = manifest.config;
    hashed["seed"] = manifest.seed;
    hashed["inputs"] = manifest.inputs;
    hashed["outputs"] = manifest.outputs;
    hashed["tool_version"] = manifest.tool_version;
    const std::string canon = hashed.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void save_manifest(const RunManifest& manifest, const std::string& dir) {
    RunManifest out = manifest;
    out.config_digest = manifest_digest(manifest);
    json j;
    j["schema_version"] = 1;
    j["subcommand"] = out.subcommand;
    j["config"] = out.config;
    j["seed"] = out.seed;
    j["inputs"] = out.inputs;
    j["outputs"] = out.outputs;
    j["tool_version"] = out.tool_version;
    j["started_utc"] = out.started_utc;
    j["finished_utc"] = out.finished_utc;
    j["config_digest"] = out.config_digest;
    const std::string path = dir + "/manifest.json";
    std::ofstream file(path);
    if (!file) throw data_error("cannot open " + path + " for writing");
    file << j.dump(2) << "\n";
    if (!file) throw data_error("write failed for " + path);
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("manifest: ") + e.what());
    }
    try {
        if (j.value("schema_version", 0) != 1)
            throw version_error("manifest: unsupported schema_version");
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.config = j.at("config");
        m.seed = j.at("seed").get<std::uint64_t>();
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.tool_version = j.at("tool_version").get<std::string>();
        m.started_utc = j.at("started_utc").get<std::string>();
        m.finished_utc = j.at("finished_utc").get<std::string>();
        m.config_digest = j.at("config_digest").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw parse_error(std::string("manifest: ") + e.what());
    }
}

} // namespace seqcon
