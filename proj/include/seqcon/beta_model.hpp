#pragma once

#include <optional>
#include <string>

#include "seqcon/errors.hpp"
#include "seqcon/rng.hpp"

namespace seqcon {

/** Beta(a,b) shape parameters. */
struct BetaParams {
    double a = 1.0;
    double b = 1.0;

    double mean() const { return a / (a + b); }
    double variance() const {
        const double s = a + b;
        return a * b / (s * s * (s + 1.0));
    }
};

void validate(const BetaParams& p);

/** The two-hypothesis likelihood model: f0 no-consensus, f1 consensus. */
struct LikelihoodPair {
    BetaParams f0;
    BetaParams f1;
    std::string domain_label;

    // ln B(f0) - ln B(f1), the constant term of the per-round LLR.
    double llr_constant() const;
};

// ln Beta_{p}(s) for s in the open interval (0,1); callers clip first.
double log_density(const BetaParams& p, double s);

// Analytic ln[f1(s)/f0(s)].
double log_likelihood_ratio(const LikelihoodPair& pair, double s);

// Closed-form KL(p || q) for Beta densities, in nats.
double kl_divergence(const BetaParams& p, const BetaParams& q);

// KL(p || q) integrated over [eps, 1-eps] by adaptive quadrature.
double kl_divergence_clipped(const BetaParams& p, const BetaParams& q, double eps);

// Method-of-moments fit from a sample mean and unbiased variance.
BetaParams fit_moments(double mean, double variance);

// One Beta draw via the quantile transform (shared code path with the copula).
double sample(const BetaParams& p, RngStream& rng);

// Score s* where the LLR changes sign, if the pair is monotone and crosses.
std::optional<double> llr_crossover(const LikelihoodPair& pair);

} // namespace seqcon
