#pragma once

#include <span>
#include <utility>
#include <vector>

#include "seqcon/beta_model.hpp"
#include "seqcon/errors.hpp"

namespace seqcon {

struct SprtConfig {
    double alpha = 0.05;
    double beta = 0.05;
    int r_max = 8;
    double epsilon_clip = 1e-6;
};

void validate(const SprtConfig& cfg);

// Decision boundaries {A, B} with A = ln((1-beta)/alpha), B = ln(beta/(1-alpha)).
std::pair<double, double> thresholds(const SprtConfig& cfg);

enum class DecisionKind {
    Continue,
    Consensus,   // Lambda >= A
    NoConsensus, // Lambda <= B
    Capped,      // round == r_max with B < Lambda < A
    Stopped,     // fixed-round schedules only: neutral halt, no call made
};

std::string to_string(DecisionKind kind);

struct Decision {
    DecisionKind kind = DecisionKind::Continue;
    int round = 0;

    bool terminal() const { return kind != DecisionKind::Continue; }
};

struct TraceRow {
    double s_raw;
    double s_clipped;
    double llr;
    double lambda;
};

double clip_score(double s, double epsilon_clip);

/**
 * The Wald sequential monitor: feeds one consensus score per round, clips it,
 * accumulates the analytic LLR and reports the four-valued decision. Checks
 * the upper boundary before the lower one; comparisons are inclusive.
 */
class WaldMonitor {
public:
    WaldMonitor(LikelihoodPair pair, SprtConfig config);

    Decision observe(double s);

    bool terminal() const { return decision_.terminal(); }
    Decision decision() const { return decision_; }
    double lambda() const { return lambda_; }
    int round() const { return static_cast<int>(trace_.size()); }
    double threshold_a() const { return a_; }
    double threshold_b() const { return b_; }
    const std::vector<TraceRow>& trace() const { return trace_; }
    const LikelihoodPair& pair() const { return pair_; }
    const SprtConfig& config() const { return config_; }

private:
    LikelihoodPair pair_;
    SprtConfig config_;
    double a_, b_;
    double lambda_ = 0.0;
    Decision decision_{};
    std::vector<TraceRow> trace_;
};

struct SprtRun {
    Decision decision;
    int rounds = 0;
    std::vector<TraceRow> trace;

    double final_lambda() const { return trace.empty() ? 0.0 : trace.back().lambda; }
};

// Feeds scores in order until a terminal decision. Throws data_error if the
// list runs out first.
SprtRun run_sequence(const LikelihoodPair& pair, const SprtConfig& config,
                     std::span<const double> scores);

} // namespace seqcon
