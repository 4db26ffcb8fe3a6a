#include "seqcon/sprt.hpp"

#include <cmath>
#include <tuple>

namespace seqcon {

void validate(const SprtConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0) || !(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw config_error("SprtConfig: alpha and beta must lie in (0,1)");
    if (!(cfg.alpha + cfg.beta < 1.0))
        throw config_error("SprtConfig: alpha + beta must be below 1");
    if (cfg.r_max < 1)
        throw config_error("SprtConfig: r_max must be at least 1");
    if (!(cfg.epsilon_clip > 0.0 && cfg.epsilon_clip < 0.5))
        throw config_error("SprtConfig: epsilon_clip must lie in (0, 0.5)");
}

std::pair<double, double> thresholds(const SprtConfig& cfg) {
    validate(cfg);
    return {std::log((1.0 - cfg.beta) / cfg.alpha), std::log(cfg.beta / (1.0 - cfg.alpha))};
}

std::string to_string(DecisionKind kind) {
    switch (kind) {
    case DecisionKind::Continue: return "continue";
    case DecisionKind::Consensus: return "consensus";
    case DecisionKind::NoConsensus: return "no_consensus";
    case DecisionKind::Capped: return "capped";
    case DecisionKind::Stopped: return "stopped";
    }
    throw domain_error("unknown decision kind");
}

double clip_score(double s, double epsilon_clip) {
    if (s < epsilon_clip) return epsilon_clip;
    if (s > 1.0 - epsilon_clip) return 1.0 - epsilon_clip;
    return s;
}

WaldMonitor::WaldMonitor(LikelihoodPair pair, SprtConfig config)
    : pair_(std::move(pair)), config_(config) {
    validate(pair_.f0);
    validate(pair_.f1);
    std::tie(a_, b_) = thresholds(config_);
    trace_.reserve(config_.r_max);
}

Decision WaldMonitor::observe(double s) {
    if (terminal())
        throw state_error("WaldMonitor: observation after terminal decision");
    if (std::isnan(s))
        throw domain_error("WaldMonitor: score is NaN");
    if (!(s >= 0.0 && s <= 1.0))
        throw domain_error("WaldMonitor: score must lie in [0,1]");

    const double clipped = clip_score(s, config_.epsilon_clip);
    const double llr = log_likelihood_ratio(pair_, clipped);
    lambda_ += llr;
    trace_.push_back({s, clipped, llr, lambda_});
    const int r = round();

    if (lambda_ >= a_)
        decision_ = {DecisionKind::Consensus, r};
    else if (lambda_ <= b_)
        decision_ = {DecisionKind::NoConsensus, r};
    else if (r == config_.r_max)
        decision_ = {DecisionKind::Capped, r};
    return decision_;
}

SprtRun run_sequence(const LikelihoodPair& pair, const SprtConfig& config,
                     std::span<const double> scores) {
    WaldMonitor monitor(pair, config);
    for (double s : scores) {
        const Decision d = monitor.observe(s);
        if (d.terminal())
            return {d, d.round, monitor.trace()};
    }
    throw data_error("run_sequence: scores exhausted before a terminal decision");
}

} // namespace seqcon
