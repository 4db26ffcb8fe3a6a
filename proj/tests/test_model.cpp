#include <cmath>
#include <vector>

#include <doctest.h>

#include "seqcon/beta_model.hpp"
#include "seqcon/numeric.hpp"
#include "seqcon/rng.hpp"
#include "seqcon/sprt.hpp"

using namespace seqcon;

namespace {
const LikelihoodPair kMmlu{{3.5, 6.0}, {6.0, 3.0}, "mmlu-planning"};
const LikelihoodPair kGsm8kReal{{13.21, 21.25}, {0.55, 0.10}, "gsm8k-real"};
} // namespace

TEST_SUITE("beta_params") {
    TEST_CASE("moments") {
        const BetaParams p{6.0, 3.0};
        CHECK(p.mean() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(p.variance() == doctest::Approx(2.0 / 90.0).epsilon(1e-14));
    }

    TEST_CASE("validation") {
        CHECK_THROWS_AS(validate(BetaParams{0.0, 1.0}), domain_error);
        CHECK_THROWS_AS(validate(BetaParams{1.0, -2.0}), domain_error);
    }
}

TEST_SUITE("log_density") {
    TEST_CASE("mmlu consensus density at 0.85") {
        CHECK(log_density({6.0, 3.0}, 0.85) ==
              doctest::Approx(0.5171293621426223).epsilon(1e-12));
    }

    TEST_CASE("uniform density is flat") {
        CHECK(log_density({1.0, 1.0}, 0.42) == doctest::Approx(0.0).epsilon(1e-14));
    }

    TEST_CASE("requires an interior point") {
        CHECK_THROWS_AS(log_density({2.0, 2.0}, 0.0), domain_error);
        CHECK_THROWS_AS(log_density({2.0, 2.0}, 1.0), domain_error);
    }
}

TEST_SUITE("llr") {
    TEST_CASE("mmlu planning values") {
        CHECK(log_likelihood_ratio(kMmlu, 0.85) ==
              doctest::Approx(4.708158534648316).epsilon(1e-12));
        CHECK(log_likelihood_ratio(kMmlu, 0.20) ==
              doctest::Approx(-3.931068223407511).epsilon(1e-12));
        CHECK(log_likelihood_ratio(kMmlu, 0.78) ==
              doctest::Approx(3.344325703378189).epsilon(1e-12));
    }

    TEST_CASE("matches the density difference") {
        for (double s : {0.1, 0.3, 0.52, 0.9}) {
            CHECK(log_likelihood_ratio(kMmlu, s) ==
                  doctest::Approx(log_density(kMmlu.f1, s) - log_density(kMmlu.f0, s))
                      .epsilon(1e-12));
        }
    }

    TEST_CASE("one clipped judge score can cross the boundary outright") {
        const double s = clip_score(1.0, 1e-6);
        CHECK(log_likelihood_ratio(kGsm8kReal, s) ==
              doctest::Approx(266.729623144671).epsilon(1e-9));
    }

    TEST_CASE("monotone increasing for an increasing pair") {
        double prev = log_likelihood_ratio(kMmlu, 0.01);
        for (double s = 0.06; s < 1.0; s += 0.05) {
            const double cur = log_likelihood_ratio(kMmlu, s);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_SUITE("crossover") {
    TEST_CASE("mmlu planning crossover") {
        const auto s = llr_crossover(kMmlu);
        REQUIRE(s.has_value());
        CHECK(*s == doctest::Approx(0.52088727762949).epsilon(1e-9));
        CHECK(std::fabs(log_likelihood_ratio(kMmlu, *s)) < 1e-9);
    }

    TEST_CASE("identical pair has no crossover") {
        const LikelihoodPair same{{2.0, 2.0}, {2.0, 2.0}, ""};
        CHECK_FALSE(llr_crossover(same).has_value());
    }
}

TEST_SUITE("kl") {
    TEST_CASE("mmlu planning directional values") {
        CHECK(kl_divergence(kMmlu.f1, kMmlu.f0) ==
              doctest::Approx(1.990357808497016).epsilon(1e-12));
        CHECK(kl_divergence(kMmlu.f0, kMmlu.f1) ==
              doctest::Approx(1.8384965617457083).epsilon(1e-12));
    }

    TEST_CASE("tertile pairs") {
        CHECK(kl_divergence({7.0, 3.0}, {3.0, 7.0}) ==
              doctest::Approx(3.8).epsilon(1e-12));
        CHECK(kl_divergence({5.5, 3.8}, {3.8, 5.5}) ==
              doctest::Approx(0.7027856144021105).epsilon(1e-12));
    }

    TEST_CASE("self KL is zero, KL is nonnegative") {
        CHECK(kl_divergence({2.3, 4.5}, {2.3, 4.5}) ==
              doctest::Approx(0.0).epsilon(1e-14));
        CHECK(kl_divergence({2.0, 5.0}, {4.0, 2.5}) > 0.0);
    }

    TEST_CASE("clipped quadrature agrees with the analytic form on interior pairs") {
        for (const auto& [p, q] : {std::pair<BetaParams, BetaParams>{{6.0, 3.0}, {3.5, 6.0}},
                                   {{4.5, 2.0}, {3.5, 5.5}},
                                   {{5.5, 3.8}, {3.8, 5.5}}}) {
            const double analytic = kl_divergence(p, q);
            const double quad = kl_divergence_clipped(p, q, 1e-6);
            CHECK(quad == doctest::Approx(analytic).epsilon(1e-4));
        }
    }

    TEST_CASE("clip truncates an edge-spiked integrand") {
        // f1 piles mass on the endpoints, so the clipped integral is far below
        // the analytic 170.64.
        const double clipped = kl_divergence_clipped(kGsm8kReal.f1, kGsm8kReal.f0, 1e-6);
        CHECK(clipped == doctest::Approx(62.43070939208661).epsilon(1e-4));
        CHECK(clipped < kl_divergence(kGsm8kReal.f1, kGsm8kReal.f0));
    }
}

TEST_SUITE("fit_moments") {
    TEST_CASE("roundtrips the analytic moments") {
        for (const BetaParams truth : {BetaParams{6.0, 3.0}, BetaParams{3.5, 6.0},
                                       BetaParams{13.21, 21.25}, BetaParams{0.55, 0.10}}) {
            const BetaParams fit = fit_moments(truth.mean(), truth.variance());
            CHECK(fit.a == doctest::Approx(truth.a).epsilon(1e-10));
            CHECK(fit.b == doctest::Approx(truth.b).epsilon(1e-10));
        }
    }

    TEST_CASE("error taxonomy") {
        CHECK_THROWS_AS(fit_moments(0.0, 0.01), domain_error);
        CHECK_THROWS_AS(fit_moments(1.2, 0.01), domain_error);
        CHECK_THROWS_AS(fit_moments(0.5, 0.0), data_error);
        CHECK_THROWS_AS(fit_moments(0.5, 0.25), data_error);
        CHECK_THROWS_AS(fit_moments(0.5, 0.4), data_error);
    }
}

TEST_SUITE("sampling") {
    TEST_CASE("moments of the quantile-transform sampler") {
        RngStream rng(20260517, 0);
        const BetaParams p{6.0, 3.0};
        double sum = 0.0, sumsq = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double s = sample(p, rng);
            REQUIRE(s > 0.0);
            REQUIRE(s < 1.0);
            sum += s;
            sumsq += s * s;
        }
        const double mean = sum / n;
        const double var = sumsq / n - mean * mean;
        CHECK(mean == doctest::Approx(p.mean()).epsilon(0.01));
        CHECK(var == doctest::Approx(p.variance()).epsilon(0.05));
    }

    TEST_CASE("deterministic given the stream") {
        RngStream a(42, 3), b(42, 3);
        const BetaParams p{3.5, 6.0};
        for (int i = 0; i < 16; ++i) CHECK(sample(p, a) == sample(p, b));
    }
}

TEST_SUITE("sprt") {
    TEST_CASE("thresholds at the default operating point") {
        const auto [a, b] = thresholds(SprtConfig{});
        CHECK(a == doctest::Approx(2.9444389791664403).epsilon(1e-12));
        CHECK(b == doctest::Approx(-2.9444389791664403).epsilon(1e-12));
    }

    TEST_CASE("asymmetric thresholds") {
        SprtConfig cfg;
        cfg.alpha = 0.01;
        cfg.beta = 0.10;
        const auto [a, b] = thresholds(cfg);
        CHECK(a == doctest::Approx(std::log(0.90 / 0.01)).epsilon(1e-12));
        CHECK(b == doctest::Approx(std::log(0.10 / 0.99)).epsilon(1e-12));
    }

    TEST_CASE("config validation") {
        SprtConfig cfg;
        cfg.alpha = 0.0;
        CHECK_THROWS_AS(validate(cfg), config_error);
        cfg = {};
        cfg.alpha = 0.6;
        cfg.beta = 0.5;
        CHECK_THROWS_AS(validate(cfg), config_error);
        cfg = {};
        cfg.r_max = 0;
        CHECK_THROWS_AS(validate(cfg), config_error);
        cfg = {};
        cfg.epsilon_clip = 0.7;
        CHECK_THROWS_AS(validate(cfg), config_error);
    }

    TEST_CASE("clip is the identity inside and pins the edges") {
        CHECK(clip_score(0.5, 1e-6) == 0.5);
        CHECK(clip_score(0.0, 1e-6) == 1e-6);
        CHECK(clip_score(1.0, 1e-6) == 1.0 - 1e-6);
    }

    TEST_CASE("single strong score crosses up") {
        WaldMonitor m(kMmlu, SprtConfig{});
        const Decision d = m.observe(0.85);
        CHECK(d.kind == DecisionKind::Consensus);
        CHECK(d.round == 1);
        CHECK(m.lambda() == doctest::Approx(4.708158534648316).epsilon(1e-12));
    }

    TEST_CASE("single weak score crosses down") {
        WaldMonitor m(kMmlu, SprtConfig{});
        const Decision d = m.observe(0.20);
        CHECK(d.kind == DecisionKind::NoConsensus);
        CHECK(d.round == 1);
    }

    TEST_CASE("degenerate judge score decides in one round after the clip") {
        WaldMonitor m(kGsm8kReal, SprtConfig{});
        const Decision d = m.observe(1.0);
        CHECK(d.kind == DecisionKind::Consensus);
        CHECK(d.round == 1);
        CHECK(m.lambda() == doctest::Approx(266.729623144671).epsilon(1e-9));
        CHECK(m.trace().front().s_clipped == 1.0 - 1e-6);
        CHECK(m.trace().front().s_raw == 1.0);
    }

    TEST_CASE("crossover scores ride to the cap") {
        WaldMonitor m(kMmlu, SprtConfig{});
        Decision d;
        for (int r = 0; r < 8; ++r) d = m.observe(0.52088727762949);
        CHECK(d.kind == DecisionKind::Capped);
        CHECK(d.round == 8);
        CHECK(std::fabs(m.lambda()) < 1e-6);
    }

    TEST_CASE("monitor rejects further scores once terminal") {
        WaldMonitor m(kMmlu, SprtConfig{});
        m.observe(0.85);
        CHECK_THROWS_AS(m.observe(0.5), state_error);
    }

    TEST_CASE("scores must be finite and inside [0,1]") {
        WaldMonitor m(kMmlu, SprtConfig{});
        CHECK_THROWS_AS(m.observe(std::nan("")), domain_error);
        CHECK_THROWS_AS(m.observe(-0.2), domain_error);
        CHECK_THROWS_AS(m.observe(1.2), domain_error);
    }

    TEST_CASE("first crossing wins: no overshoot past a terminal state") {
        // A run of mild positives should cross exactly when the sum first
        // reaches A, never later.
        WaldMonitor m(kMmlu, SprtConfig{});
        double lambda = 0.0;
        int crossing_round = 0;
        for (int r = 1; r <= 8; ++r) {
            lambda += log_likelihood_ratio(kMmlu, 0.70);
            if (lambda >= m.threshold_a()) {
                crossing_round = r;
                break;
            }
        }
        Decision d;
        for (int r = 0; r < crossing_round; ++r) d = m.observe(0.70);
        CHECK(d.kind == DecisionKind::Consensus);
        CHECK(d.round == crossing_round);
    }

    TEST_CASE("upper boundary is checked before the lower one") {
        // With alpha + beta near 1 both thresholds collapse toward 0; a score
        // beyond both must resolve as Consensus.
        SprtConfig cfg;
        cfg.alpha = 0.45;
        cfg.beta = 0.45;
        const auto [a, b] = thresholds(cfg);
        REQUIRE(a > 0.0);
        REQUIRE(b < 0.0);
        WaldMonitor m(kMmlu, cfg);
        const Decision d = m.observe(0.85);  // LLR 4.7 >= A and far from B
        CHECK(d.kind == DecisionKind::Consensus);
    }

    TEST_CASE("run_sequence mirrors the monitor") {
        const std::vector<double> scores{0.6, 0.6, 0.6, 0.6};
        const SprtRun run = run_sequence(kMmlu, SprtConfig{}, scores);
        WaldMonitor m(kMmlu, SprtConfig{});
        Decision d;
        for (double s : scores) {
            d = m.observe(s);
            if (d.terminal()) break;
        }
        CHECK(run.decision.kind == d.kind);
        CHECK(run.decision.round == d.round);
        CHECK(run.final_lambda() == doctest::Approx(m.lambda()).epsilon(1e-14));
    }

    TEST_CASE("run_sequence throws when scores run out") {
        const std::vector<double> scores{0.52, 0.52};
        CHECK_THROWS_AS(run_sequence(kMmlu, SprtConfig{}, scores), data_error);
    }

    TEST_CASE("lambda trace accumulates per-round LLRs") {
        WaldMonitor m(kMmlu, SprtConfig{});
        m.observe(0.6);
        m.observe(0.7);
        const auto& trace = m.trace();
        REQUIRE(trace.size() == 2);
        CHECK(trace[0].lambda == doctest::Approx(trace[0].llr).epsilon(1e-14));
        CHECK(trace[1].lambda ==
              doctest::Approx(trace[0].llr + trace[1].llr).epsilon(1e-14));
    }
}
