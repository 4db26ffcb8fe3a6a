#include "seqcon/calibration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seqcon/sprt.hpp"

namespace seqcon {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Informative: return "informative";
    case Verdict::Marginal: return "marginal";
    case Verdict::Uninformative: return "uninformative";
    }
    throw domain_error("unknown verdict");
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "informative") return Verdict::Informative;
    if (s == "marginal") return Verdict::Marginal;
    if (s == "uninformative") return Verdict::Uninformative;
    throw parse_error("unknown verdict string: " + s);
}

SeparabilityReport separability_diagnostic(const LikelihoodPair& pair) {
    validate(pair.f0);
    validate(pair.f1);
    SeparabilityReport rep;
    rep.kl_f1_f0 = kl_divergence(pair.f1, pair.f0);
    rep.kl_f0_f1 = kl_divergence(pair.f0, pair.f1);
    rep.symmetric_kl = rep.kl_f1_f0 + rep.kl_f0_f1;
    rep.mean0 = pair.f0.mean();
    rep.mean1 = pair.f1.mean();
    if (rep.symmetric_kl < 0.2)
        rep.verdict = Verdict::Uninformative;
    else if (rep.symmetric_kl < 1.0)
        rep.verdict = Verdict::Marginal;
    else
        rep.verdict = Verdict::Informative;
    return rep;
}

namespace {

struct Pool {
    std::vector<double> scores;
    int n_sequences = 0;
};

BetaParams fit_pool(const Pool& pool, const char* label_name, long floor) {
    const long n = static_cast<long>(pool.scores.size());
    if (pool.n_sequences == 0)
        throw data_error(std::string("no sequences labeled ") + label_name);
    if (n < floor)
        throw data_error(std::string("label ") + label_name + " has " + std::to_string(n) +
                         " scores, below the floor of " + std::to_string(floor));
    double mean = 0.0;
    for (double s : pool.scores) mean += s;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double s : pool.scores) ss += (s - mean) * (s - mean);
    const double variance = ss / static_cast<double>(n - 1);
    if (variance == 0.0)
        throw data_error(std::string("degenerate sample for label ") + label_name +
                         ": all scores identical");
    if (variance >= mean * (1.0 - mean))
        throw data_error(std::string("infeasible moments for label ") + label_name +
                         ": variance " + std::to_string(variance) + " >= m(1-m)");
    return fit_moments(mean, variance);
}

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

CalibrationArtifact calibrate(const std::vector<ScoreSequence>& sequences,
                              const CalibrationOptions& options) {
    if (options.epsilon_clip <= 0.0 || options.epsilon_clip >= 0.5)
        throw config_error("epsilon_clip must lie in (0, 0.5)");
    Pool h0, h1;
    std::string task;
    for (const auto& seq : sequences) {
        if (seq.scores.empty())
            throw data_error("sequence " + seq.item_id + " has no scores");
        if (task.empty()) task = seq.task;
        Pool& pool = (seq.label == Label::H1) ? h1 : h0;
        pool.n_sequences += 1;
        for (double s : seq.scores) {
            if (std::isnan(s) || s < 0.0 || s > 1.0)
                throw domain_error("score outside [0, 1] in sequence " + seq.item_id);
            pool.scores.push_back(clip_score(s, options.epsilon_clip));
        }
    }
    CalibrationArtifact art;
    art.task = task;
    art.pair.f0 = fit_pool(h0, "H0", options.min_scores_per_label);
    art.pair.f1 = fit_pool(h1, "H1", options.min_scores_per_label);
    art.pair.domain_label = task;
    art.diagnostics = separability_diagnostic(art.pair);
    art.n_sequences_h0 = h0.n_sequences;
    art.n_sequences_h1 = h1.n_sequences;
    art.n_scores_h0 = static_cast<long>(h0.scores.size());
    art.n_scores_h1 = static_cast<long>(h1.scores.size());
    art.epsilon_clip = options.epsilon_clip;
    art.created_utc = utc_now_iso8601();
    return art;
}

std::string artifact_to_json(const CalibrationArtifact& artifact) {
    json j;
    j["schema_version"] = 1;
    j["task"] = artifact.task;
    j["a0"] = artifact.pair.f0.a;
    j["b0"] = artifact.pair.f0.b;
    j["a1"] = artifact.pair.f1.a;
    j["b1"] = artifact.pair.f1.b;
    j["mean0"] = artifact.diagnostics.mean0;
    j["mean1"] = artifact.diagnostics.mean1;
    j["kl_f1_f0"] = artifact.diagnostics.kl_f1_f0;
    j["kl_f0_f1"] = artifact.diagnostics.kl_f0_f1;
    j["symmetric_kl"] = artifact.diagnostics.symmetric_kl;
    j["verdict"] = to_string(artifact.diagnostics.verdict);
    j["n_sequences"] = {{"h0", artifact.n_sequences_h0}, {"h1", artifact.n_sequences_h1}};
    j["n_scores"] = {{"h0", artifact.n_scores_h0}, {"h1", artifact.n_scores_h1}};
    j["epsilon_clip"] = artifact.epsilon_clip;
    j["created_utc"] = artifact.created_utc;
    return j.dump(2) + "\n";
}

CalibrationArtifact artifact_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("calibration artifact: ") + e.what());
    }
    try {
        if (!j.contains("schema_version"))
            throw parse_error("calibration artifact: missing schema_version");
        const int version = j.at("schema_version").get<int>();
        if (version != 1)
            throw version_error("calibration artifact: schema_version " +
                                std::to_string(version) + " unsupported (expected 1)");
        CalibrationArtifact art;
        art.task = j.at("task").get<std::string>();
        art.pair.f0 = {j.at("a0").get<double>(), j.at("b0").get<double>()};
        art.pair.f1 = {j.at("a1").get<double>(), j.at("b1").get<double>()};
        art.pair.domain_label = art.task;
        validate(art.pair.f0);
        validate(art.pair.f1);
        art.diagnostics.mean0 = j.at("mean0").get<double>();
        art.diagnostics.mean1 = j.at("mean1").get<double>();
        art.diagnostics.kl_f1_f0 = j.at("kl_f1_f0").get<double>();
        art.diagnostics.kl_f0_f1 = j.at("kl_f0_f1").get<double>();
        art.diagnostics.symmetric_kl = j.at("symmetric_kl").get<double>();
        art.diagnostics.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        art.n_sequences_h0 = j.at("n_sequences").at("h0").get<int>();
        art.n_sequences_h1 = j.at("n_sequences").at("h1").get<int>();
        art.n_scores_h0 = j.at("n_scores").at("h0").get<long>();
        art.n_scores_h1 = j.at("n_scores").at("h1").get<long>();
        art.epsilon_clip = j.at("epsilon_clip").get<double>();
        art.created_utc = j.at("created_utc").get<std::string>();
        return art;
    } catch (const json::exception& e) {
        throw parse_error(std::string("calibration artifact: ") + e.what());
    }
}

void save_artifact(const CalibrationArtifact& artifact, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open " + path + " for writing");
    out << artifact_to_json(artifact);
    if (!out) throw data_error("write failed for " + path);
}

CalibrationArtifact load_artifact(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return artifact_from_json(buf.str());
}

} // namespace seqcon
