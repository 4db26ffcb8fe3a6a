#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqcon/beta_model.hpp"
#include "seqcon/errors.hpp"
#include "seqcon/rng.hpp"
#include "seqcon/sprt.hpp"

namespace seqcon {

enum class Hypothesis { H0, H1 };

std::string to_string(Hypothesis h);

/**
 * Stopping rules share the scenario's SprtConfig for r_max and the clip; the
 * alpha/beta thresholds only matter to the Sprt variant. Threshold rules emit
 * Consensus when they fire and Capped if they never do; FixedRounds and
 * SingleRound emit a neutral Stopped decision used only for cost accounting.
 */
struct StoppingRule {
    enum class Kind { Sprt, FixedRounds, SingleRound, ThresholdScore, ThresholdStability };

    Kind kind = Kind::Sprt;
    int fixed_rounds = 5;  // FixedRounds
    double cut = 0.85;     // ThresholdScore: halt when s_r >= cut
    double delta = 0.05;   // ThresholdStability: halt when |s_r - s_{r-1}| <= delta, r >= 2

    static StoppingRule sprt() { return {}; }
    static StoppingRule fixed(int rounds) { return {Kind::FixedRounds, rounds, 0.85, 0.05}; }
    static StoppingRule single() { return {Kind::SingleRound, 5, 0.85, 0.05}; }
    static StoppingRule threshold_score(double cut = 0.85) {
        return {Kind::ThresholdScore, 5, cut, 0.05};
    }
    static StoppingRule threshold_stability(double delta = 0.05) {
        return {Kind::ThresholdStability, 5, 0.85, delta};
    }

    std::string name() const;
};

struct HypothesisMode {
    enum class Kind { Both, H0Only, H1Only, Mixture };

    Kind kind = Kind::Both;
    double pi = 0.5;  // P(H1) under Mixture

    static HypothesisMode both() { return {}; }
    static HypothesisMode h0_only() { return {Kind::H0Only, 0.5}; }
    static HypothesisMode h1_only() { return {Kind::H1Only, 0.5}; }
    static HypothesisMode mixture(double pi) { return {Kind::Mixture, pi}; }
};

/**
 * One Monte-Carlo configuration. `pair` is what the monitor believes;
 * `truth_pair` is what actually generates scores (defaults to `pair`, differs
 * under mis-calibration sweeps). n_trials is per hypothesis under Both and the
 * total under the single and Mixture modes.
 *
 * Stream layout (fixed, documented): H1 trial i uses stream id i, H0 trial i
 * uses stream id n_trials + i; Mixture trial i uses stream id i and spends its
 * first uniform on the Bernoulli(pi) hypothesis draw.
 */
struct Scenario {
    LikelihoodPair pair;
    std::optional<LikelihoodPair> truth_pair;
    StoppingRule rule;
    SprtConfig config;
    HypothesisMode mode;
    double rho = 0.0;  // AR(1) latent correlation, in [0, 1); 0 draws i.i.d.
    long n_trials = 50000;
    std::uint64_t seed = 20260517;
};

void validate(const Scenario& scenario);

struct TrialRecord {
    Hypothesis hypothesis = Hypothesis::H0;
    Decision decision;
    int rounds = 0;
    std::vector<double> lambda_trace;
    // Strict convention: Consensus under H1 or NoConsensus under H0; Capped
    // and Stopped never count.
    bool classification_correct = false;
};

struct RoundQuantiles {
    int p50 = 0;
    int p95 = 0;
    int p99 = 0;
};

struct ConditionalMedianRow {
    int round = 0;
    std::optional<double> median_h1;
    std::optional<double> median_h0;
};

/**
 * Aggregates over one scenario. Rates whose conditioning class is empty are
 * NaN. Two accuracy conventions ship side by side:
 *  - classification_accuracy resolves every trial to a call: Consensus -> H1,
 *    NoConsensus -> H0, Capped -> sign of the final Lambda for the SPRT rule
 *    and H0 (never fired) for threshold rules. Stopped trials are excluded.
 *  - classification_accuracy_strict counts Capped as incorrect outright.
 */
struct SimulationReport {
    long n_h1 = 0;
    long n_h0 = 0;
    double e_rounds_h1 = 0.0;
    double e_rounds_h0 = 0.0;
    double avg_rounds = 0.0;  // 0.5 * (e_rounds_h0 + e_rounds_h1) when both sides ran
    double alpha_hat = 0.0;   // P(Consensus | H0)
    double beta_hat = 0.0;    // P(NoConsensus | H1)
    double cap_rate = 0.0;
    double frac_consensus = 0.0;
    double frac_no_consensus = 0.0;
    double frac_capped = 0.0;
    double frac_stopped = 0.0;
    double classification_accuracy = 0.0;
    double classification_accuracy_strict = 0.0;
    RoundQuantiles round_quantiles;
    std::vector<ConditionalMedianRow> conditional_median_lambda;
};

// r_max independent draws from the hypothesis' side of the pair.
std::vector<double> gen_iid(const LikelihoodPair& pair, Hypothesis hyp, int r_max,
                            RngStream& rng);

// Stationary Gaussian-copula path: z_1 ~ N(0,1), z_{r+1} = rho z_r +
// sqrt(1-rho^2) w_r, s_r = beta_quantile(., normal_cdf(z_r)).
std::vector<double> gen_ar1(const LikelihoodPair& pair, Hypothesis hyp, double rho,
                            int r_max, RngStream& rng);

/**
 * Runs the scenario and aggregates. Bit-identical for a fixed scenario across
 * runs and worker counts; n_workers = 0 picks the hardware count.
 */
SimulationReport simulate(const Scenario& scenario, int n_workers = 0);

// Record-level variant; memory grows with trial count.
std::vector<TrialRecord> run_trials(const Scenario& scenario);

// Per-round medians of Lambda_r among paths still active entering round r,
// split by hypothesis. Rounds where both sides are empty are omitted.
std::vector<ConditionalMedianRow> conditional_median_trace(
    const std::vector<TrialRecord>& records);

struct OperatingPoint {
    double alpha = 0.0;
    double avg_rounds = 0.0;
    double classification_accuracy = 0.0;
};

// One Both-mode simulate per alpha (with beta = alpha), common random numbers
// across points; rows ordered by ascending alpha.
std::vector<OperatingPoint> sweep_operating_curve(const LikelihoodPair& pair,
                                                  std::vector<double> alphas, int r_max,
                                                  long n_trials, std::uint64_t seed);

struct SensitivityPoint {
    double delta = 0.0;
    double avg_rounds = 0.0;
    double classification_accuracy = 0.0;
    double classification_accuracy_strict = 0.0;
};

// Perturbs all four monitor shapes by (1 + delta) while the generator keeps
// the unperturbed truth. Deltas limited to [-0.25, +0.25].
std::vector<SensitivityPoint> sensitivity_sweep(const LikelihoodPair& pair,
                                                std::vector<double> deltas,
                                                const SprtConfig& config, long n_trials,
                                                std::uint64_t seed);

struct TertileRow {
    std::string tertile;
    double kl = 0.0;  // KL(f1 || f0)
    double avg_rounds = 0.0;
    double cap_rate = 0.0;
    double classification_accuracy = 0.0;
};

// Fixed Easy / Medium / Hard pairs, one Both-mode simulate each.
std::vector<TertileRow> difficulty_tertiles(const SprtConfig& config, long n_trials,
                                            std::uint64_t seed);

// Wald's approximations ((1-b)A + bB)/KL(f1||f0) and ((1-a)(-B) - aA)/KL(f0||f1),
// returned as (e_r_h1, e_r_h0).
std::pair<double, double> asymptotic_rounds(const LikelihoodPair& pair, double alpha,
                                            double beta);

// ln(1/alpha)/KL(f1||f0) + ln(1/beta)/KL(f0||f1).
double chernoff_fixed_sample_bound(const LikelihoodPair& pair, double alpha, double beta);

struct BaselineRow {
    std::string rule;
    double avg_rounds = 0.0;
    double classification_accuracy = 0.0;
    double cap_rate = 0.0;
};

// Mixture pi = 0.5 runs of every stopping rule on the given pair.
std::vector<BaselineRow> run_baselines(const LikelihoodPair& pair, const SprtConfig& config,
                                       long n_trials, std::uint64_t seed);

// Built-in pairs: mmlu-planning, gsm8k-planning, judgebench-planning, easy,
// hard, mmlu-real, gsm8k-real.
LikelihoodPair planning_pair(const std::string& name);
std::vector<std::string> planning_pair_names();

std::string report_to_json(const SimulationReport& report);
std::string operating_curve_csv(const std::vector<OperatingPoint>& rows);
std::string sensitivity_csv(const std::vector<SensitivityPoint>& rows);
std::string tertiles_csv(const std::vector<TertileRow>& rows);
std::string baselines_csv(const std::vector<BaselineRow>& rows);

} // namespace seqcon
