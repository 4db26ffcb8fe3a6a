#pragma once

#include <string>
#include <vector>

#include "seqcon/beta_model.hpp"
#include "seqcon/errors.hpp"

namespace seqcon {

enum class Label { H0, H1 }; // H0 = incorrect/no-consensus pool, H1 = correct/consensus pool

struct ScoreSequence {
    std::string item_id;
    std::vector<double> scores;
    Label label = Label::H0;
    std::string task;
};

enum class Verdict { Informative, Marginal, Uninformative };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct SeparabilityReport {
    double kl_f1_f0 = 0.0;
    double kl_f0_f1 = 0.0;
    double symmetric_kl = 0.0;
    Verdict verdict = Verdict::Uninformative;
    double mean0 = 0.0;
    double mean1 = 0.0;
};

struct CalibrationArtifact {
    std::string task;
    LikelihoodPair pair;
    SeparabilityReport diagnostics;
    int n_sequences_h0 = 0;
    int n_sequences_h1 = 0;
    long n_scores_h0 = 0;
    long n_scores_h1 = 0;
    double epsilon_clip = 1e-6;
    std::string created_utc;
};

struct CalibrationOptions {
    double epsilon_clip = 1e-6;
    long min_scores_per_label = 10;
};

// Pools all rounds per label, clips, fits Beta moments per label and attaches
// the separability diagnostics.
CalibrationArtifact calibrate(const std::vector<ScoreSequence>& sequences,
                              const CalibrationOptions& options = {});

// Directional analytic KLs plus the verdict: uninformative below 0.2 nats of
// symmetric KL, marginal below 1.0, informative otherwise.
SeparabilityReport separability_diagnostic(const LikelihoodPair& pair);

void save_artifact(const CalibrationArtifact& artifact, const std::string& path);
CalibrationArtifact load_artifact(const std::string& path);

std::string artifact_to_json(const CalibrationArtifact& artifact);
CalibrationArtifact artifact_from_json(const std::string& text);

} // namespace seqcon
