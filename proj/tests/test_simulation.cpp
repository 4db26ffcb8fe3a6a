#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqcon/numeric.hpp"
#include "seqcon/simulation.hpp"

using namespace seqcon;

namespace {

const LikelihoodPair kMmlu = planning_pair("mmlu-planning");
const LikelihoodPair kGsm8k = planning_pair("gsm8k-planning");

Scenario mmlu_scenario(long n) {
    Scenario sc;
    sc.pair = kMmlu;
    sc.n_trials = n;
    return sc;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

} // namespace

TEST_SUITE("generators") {
    TEST_CASE("iid draws are reproducible and stream-distinct") {
        RngStream a(42, 3), b(42, 3), c(42, 4);
        const auto va = gen_iid(kMmlu, Hypothesis::H1, 8, a);
        const auto vb = gen_iid(kMmlu, Hypothesis::H1, 8, b);
        const auto vc = gen_iid(kMmlu, Hypothesis::H1, 8, c);
        CHECK(va == vb);
        CHECK(va != vc);
        CHECK(va.size() == 8);
    }

    TEST_CASE("iid draws land on the requested side of the pair") {
        RngStream rng(7, 0);
        std::vector<double> h1, h0;
        for (int i = 0; i < 2500; ++i) {
            const auto a = gen_iid(kMmlu, Hypothesis::H1, 4, rng);
            const auto b = gen_iid(kMmlu, Hypothesis::H0, 4, rng);
            h1.insert(h1.end(), a.begin(), a.end());
            h0.insert(h0.end(), b.begin(), b.end());
        }
        CHECK(mean_of(h1) == doctest::Approx(6.0 / 9.0).epsilon(0.02));
        CHECK(mean_of(h0) == doctest::Approx(3.5 / 9.5).epsilon(0.02));
    }

    TEST_CASE("each draw costs exactly one uniform") {
        RngStream a(5, 1), b(5, 1);
        gen_iid(kMmlu, Hypothesis::H1, 8, a);
        for (int i = 0; i < 8; ++i) b.next_uniform();
        CHECK(a.next_u64() == b.next_u64());

        RngStream c(5, 2), d(5, 2);
        gen_ar1(kMmlu, Hypothesis::H1, 0.6, 8, c);
        for (int i = 0; i < 8; ++i) d.next_uniform();
        CHECK(c.next_u64() == d.next_u64());
    }

    TEST_CASE("copula marginals match the iid law") {
        RngStream a(11, 0), b(11, 1);
        std::vector<double> corr, iid;
        for (int i = 0; i < 2000; ++i) {
            const auto va = gen_ar1(kMmlu, Hypothesis::H0, 0.6, 8, a);
            const auto vb = gen_iid(kMmlu, Hypothesis::H0, 8, b);
            corr.insert(corr.end(), va.begin(), va.end());
            iid.insert(iid.end(), vb.begin(), vb.end());
        }
        CHECK(mean_of(corr) == doctest::Approx(mean_of(iid)).epsilon(0.02));
        for (double s : corr) {
            CHECK(s > 0.0);
            CHECK(s < 1.0);
        }
    }

    TEST_CASE("copula is stationary round by round") {
        RngStream rng(13, 0);
        std::vector<double> first, last;
        for (int i = 0; i < 4000; ++i) {
            const auto v = gen_ar1(kMmlu, Hypothesis::H1, 0.6, 8, rng);
            first.push_back(v.front());
            last.push_back(v.back());
        }
        CHECK(mean_of(first) == doctest::Approx(mean_of(last)).epsilon(0.03));
    }

    TEST_CASE("high rho carries the latent correlation") {
        RngStream rng(17, 0);
        double sxy = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
        long n = 0;
        for (int i = 0; i < 4000; ++i) {
            const auto v = gen_ar1(kMmlu, Hypothesis::H1, 0.99, 8, rng);
            for (size_t r = 0; r + 1 < v.size(); ++r) {
                const double x = normal_quantile(reg_inc_beta(6.0, 3.0, v[r]));
                const double y = normal_quantile(reg_inc_beta(6.0, 3.0, v[r + 1]));
                sxy += x * y;
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                ++n;
            }
        }
        const double d = static_cast<double>(n);
        const double cov = sxy / d - (sx / d) * (sy / d);
        const double vx = sxx / d - (sx / d) * (sx / d);
        const double vy = syy / d - (sy / d) * (sy / d);
        CHECK(cov / std::sqrt(vx * vy) > 0.95);
    }

    TEST_CASE("argument validation") {
        RngStream rng(1, 0);
        CHECK_THROWS_AS(gen_iid(kMmlu, Hypothesis::H1, 0, rng), config_error);
        CHECK_THROWS_AS(gen_ar1(kMmlu, Hypothesis::H1, 1.0, 8, rng), config_error);
    }
}

TEST_SUITE("simulate") {
    TEST_CASE("planning-pair operating characteristics") {
        const auto rep = simulate(mmlu_scenario(20000));
        CHECK(rep.n_h1 == 20000);
        CHECK(rep.n_h0 == 20000);
        CHECK(rep.e_rounds_h1 == doctest::Approx(2.3451).epsilon(0.02));
        CHECK(rep.e_rounds_h0 == doctest::Approx(2.4162).epsilon(0.02));
        CHECK(rep.avg_rounds == doctest::Approx(2.3806).epsilon(0.015));
        CHECK(rep.alpha_hat == doctest::Approx(0.01594).epsilon(0.25));
        CHECK(rep.beta_hat == doctest::Approx(0.01746).epsilon(0.25));
        CHECK(rep.cap_rate == doctest::Approx(0.00429).epsilon(0.40));
        CHECK(rep.classification_accuracy == doctest::Approx(0.98240).epsilon(0.004));
        CHECK(rep.classification_accuracy > rep.classification_accuracy_strict);
        CHECK(rep.classification_accuracy - rep.classification_accuracy_strict <=
              rep.cap_rate + 1e-12);
        CHECK(rep.round_quantiles.p50 == 2);
        CHECK(rep.round_quantiles.p95 == 5);
        CHECK(rep.round_quantiles.p99 == 7);
        CHECK(rep.frac_consensus + rep.frac_no_consensus + rep.frac_capped +
                  rep.frac_stopped == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.frac_stopped == 0.0);
    }

    TEST_CASE("second planning pair") {
        Scenario sc;
        sc.pair = kGsm8k;
        sc.n_trials = 20000;
        const auto rep = simulate(sc);
        CHECK(rep.avg_rounds == doctest::Approx(2.5986).epsilon(0.015));
        CHECK(rep.alpha_hat == doctest::Approx(0.01367).epsilon(0.3));
        CHECK(rep.beta_hat == doctest::Approx(0.02145).epsilon(0.25));
        CHECK(rep.cap_rate == doctest::Approx(0.00728).epsilon(0.30));
        CHECK(rep.round_quantiles.p95 == 6);
    }

    TEST_CASE("reports are bit-identical across worker counts and repeats") {
        const Scenario sc = mmlu_scenario(4000);
        const auto a = simulate(sc, 1);
        const auto b = simulate(sc, 2);
        const auto c = simulate(sc, 5);
        const auto d = simulate(sc, 2);
        for (const auto* rep : {&b, &c, &d}) {
            CHECK(rep->e_rounds_h1 == a.e_rounds_h1);
            CHECK(rep->e_rounds_h0 == a.e_rounds_h0);
            CHECK(rep->alpha_hat == a.alpha_hat);
            CHECK(rep->beta_hat == a.beta_hat);
            CHECK(rep->cap_rate == a.cap_rate);
            CHECK(rep->classification_accuracy == a.classification_accuracy);
            CHECK(rep->classification_accuracy_strict == a.classification_accuracy_strict);
            CHECK(rep->round_quantiles.p50 == a.round_quantiles.p50);
            CHECK(rep->round_quantiles.p95 == a.round_quantiles.p95);
            CHECK(rep->round_quantiles.p99 == a.round_quantiles.p99);
            REQUIRE(rep->conditional_median_lambda.size() ==
                    a.conditional_median_lambda.size());
            for (size_t i = 0; i < a.conditional_median_lambda.size(); ++i) {
                CHECK(rep->conditional_median_lambda[i].round ==
                      a.conditional_median_lambda[i].round);
                CHECK(rep->conditional_median_lambda[i].median_h1 ==
                      a.conditional_median_lambda[i].median_h1);
                CHECK(rep->conditional_median_lambda[i].median_h0 ==
                      a.conditional_median_lambda[i].median_h0);
            }
        }
    }

    TEST_CASE("every trial replays exactly through the reference monitor") {
        Scenario sc = mmlu_scenario(300);
        sc.seed = 99;
        const auto records = run_trials(sc);
        REQUIRE(records.size() == 600);
        for (long t = 0; t < 600; ++t) {
            const auto& rec = records[static_cast<size_t>(t)];
            const Hypothesis hyp = t < 300 ? Hypothesis::H1 : Hypothesis::H0;
            CHECK(rec.hypothesis == hyp);
            RngStream rng(sc.seed, static_cast<std::uint64_t>(t));
            const BetaParams& dist = hyp == Hypothesis::H1 ? sc.pair.f1 : sc.pair.f0;
            WaldMonitor monitor(sc.pair, sc.config);
            Decision dec;
            do {
                dec = monitor.observe(sample(dist, rng));
            } while (dec.kind == DecisionKind::Continue);
            CHECK(dec.kind == rec.decision.kind);
            CHECK(dec.round == rec.decision.round);
            REQUIRE(monitor.trace().size() == rec.lambda_trace.size());
            for (size_t r = 0; r < rec.lambda_trace.size(); ++r)
                CHECK(monitor.trace()[r].lambda == rec.lambda_trace[r]);
            CHECK(rec.classification_correct ==
                  ((dec.kind == DecisionKind::Consensus && hyp == Hypothesis::H1) ||
                   (dec.kind == DecisionKind::NoConsensus && hyp == Hypothesis::H0)));
        }
    }

    TEST_CASE("shorter caps only truncate, never reshuffle") {
        Scenario sc8 = mmlu_scenario(500);
        Scenario sc4 = sc8;
        sc4.config.r_max = 4;
        const auto r8 = run_trials(sc8);
        const auto r4 = run_trials(sc4);
        REQUIRE(r8.size() == r4.size());
        for (size_t i = 0; i < r8.size(); ++i) {
            if (r4[i].decision.kind != DecisionKind::Capped) {
                CHECK(r4[i].decision.kind == r8[i].decision.kind);
                CHECK(r4[i].lambda_trace == r8[i].lambda_trace);
            } else {
                REQUIRE(r4[i].lambda_trace.size() == 4);
                REQUIRE(r8[i].lambda_trace.size() >= 4);
                for (size_t r = 0; r < 4; ++r)
                    CHECK(r4[i].lambda_trace[r] == r8[i].lambda_trace[r]);
            }
        }
    }

    TEST_CASE("record aggregation agrees with the streaming report") {
        const Scenario sc = mmlu_scenario(3000);
        const auto rep = simulate(sc);
        const auto records = run_trials(sc);
        long n1 = 0, rounds1 = 0, cons0 = 0, n0 = 0, capped = 0, strict = 0;
        for (const auto& rec : records) {
            if (rec.hypothesis == Hypothesis::H1) {
                ++n1;
                rounds1 += rec.rounds;
            } else {
                ++n0;
                if (rec.decision.kind == DecisionKind::Consensus) ++cons0;
            }
            if (rec.decision.kind == DecisionKind::Capped) ++capped;
            if (rec.classification_correct) ++strict;
        }
        CHECK(n1 == rep.n_h1);
        CHECK(static_cast<double>(rounds1) / static_cast<double>(n1) == rep.e_rounds_h1);
        CHECK(static_cast<double>(cons0) / static_cast<double>(n0) == rep.alpha_hat);
        CHECK(static_cast<double>(capped) / static_cast<double>(n0 + n1) == rep.cap_rate);
        CHECK(static_cast<double>(strict) / static_cast<double>(n0 + n1) ==
              rep.classification_accuracy_strict);
    }

    TEST_CASE("mixture mode draws the hypothesis from the stream") {
        Scenario sc = mmlu_scenario(20000);
        sc.mode = HypothesisMode::mixture(0.78);
        const auto rep = simulate(sc);
        CHECK(rep.n_h1 + rep.n_h0 == 20000);
        CHECK(rep.n_h1 == doctest::Approx(15600).epsilon(0.02));
        CHECK(rep.frac_consensus == doctest::Approx(0.7666).epsilon(0.02));
        CHECK(rep.frac_no_consensus == doctest::Approx(0.2292).epsilon(0.05));
        CHECK(rep.frac_capped == doctest::Approx(0.0042).epsilon(0.5));

        Scenario small = sc;
        small.n_trials = 200;
        const auto records = run_trials(small);
        for (long t = 0; t < 200; ++t) {
            RngStream rng(small.seed, static_cast<std::uint64_t>(t));
            const Hypothesis expect =
                rng.next_uniform() < 0.78 ? Hypothesis::H1 : Hypothesis::H0;
            CHECK(records[static_cast<size_t>(t)].hypothesis == expect);
        }
    }

    TEST_CASE("an uninformative monitor mostly caps out") {
        Scenario sc;
        sc.pair = planning_pair("mmlu-real");
        sc.truth_pair = LikelihoodPair{sc.pair.f1, sc.pair.f1, "drift-free"};
        sc.n_trials = 3000;
        const auto rep = simulate(sc);
        CHECK(rep.cap_rate > 0.90);
    }

    TEST_CASE("fixed-round schedules stop without calling") {
        Scenario sc = mmlu_scenario(500);
        sc.rule = StoppingRule::fixed(3);
        const auto rep = simulate(sc);
        CHECK(rep.e_rounds_h1 == 3.0);
        CHECK(rep.e_rounds_h0 == 3.0);
        CHECK(rep.frac_stopped == 1.0);
        CHECK(std::isnan(rep.classification_accuracy));
        CHECK(std::isnan(rep.classification_accuracy_strict));
        CHECK(rep.round_quantiles.p50 == 3);
        CHECK(rep.round_quantiles.p99 == 3);
        CHECK(rep.conditional_median_lambda.size() == 3);

        sc.rule = StoppingRule::single();
        const auto one = simulate(sc);
        CHECK(one.avg_rounds == 1.0);
        CHECK(one.round_quantiles.p99 == 1);
    }

    TEST_CASE("scenario validation") {
        Scenario sc = mmlu_scenario(100);
        sc.rho = 1.0;
        CHECK_THROWS_AS(validate(sc), config_error);
        sc = mmlu_scenario(0);
        CHECK_THROWS_AS(validate(sc), config_error);
        sc = mmlu_scenario(100);
        sc.mode = HypothesisMode::mixture(1.5);
        CHECK_THROWS_AS(validate(sc), config_error);
        sc = mmlu_scenario(100);
        sc.rule = StoppingRule::fixed(0);
        CHECK_THROWS_AS(validate(sc), config_error);
        sc = mmlu_scenario(100);
        sc.rule = StoppingRule::threshold_score(1.0);
        CHECK_THROWS_AS(validate(sc), config_error);
        sc = mmlu_scenario(100);
        sc.rule = StoppingRule::threshold_stability(0.0);
        CHECK_THROWS_AS(validate(sc), config_error);
    }
}

TEST_SUITE("medians") {
    TEST_CASE("conditional medians pool active paths per round") {
        std::vector<TrialRecord> records(3);
        records[0] = {Hypothesis::H1, {DecisionKind::Consensus, 1}, 1, {1.0}, true};
        records[1] = {Hypothesis::H1, {DecisionKind::Consensus, 2}, 2, {3.0, 4.0}, true};
        records[2] = {Hypothesis::H0, {DecisionKind::NoConsensus, 1}, 1, {-1.0}, true};
        const auto rows = conditional_median_trace(records);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].round == 1);
        CHECK(rows[0].median_h1.value() == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(rows[0].median_h0.value() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(rows[1].round == 2);
        CHECK(rows[1].median_h1.value() == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(!rows[1].median_h0.has_value());
    }

    TEST_CASE("record-level medians equal the streaming ones") {
        const Scenario sc = mmlu_scenario(2000);
        const auto rep = simulate(sc);
        const auto rows = conditional_median_trace(run_trials(sc));
        REQUIRE(rows.size() == rep.conditional_median_lambda.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i].round == rep.conditional_median_lambda[i].round);
            CHECK(rows[i].median_h1 == rep.conditional_median_lambda[i].median_h1);
            CHECK(rows[i].median_h0 == rep.conditional_median_lambda[i].median_h0);
        }
    }
}

TEST_SUITE("sweeps") {
    TEST_CASE("operating curve is sorted and trades rounds against accuracy") {
        const auto rows =
            sweep_operating_curve(kMmlu, {0.2, 0.01, 0.05}, 8, 10000, 20260517);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].alpha == 0.01);
        CHECK(rows[1].alpha == 0.05);
        CHECK(rows[2].alpha == 0.2);
        CHECK(rows[0].avg_rounds == doctest::Approx(3.2704).epsilon(0.02));
        CHECK(rows[1].avg_rounds == doctest::Approx(2.3806).epsilon(0.02));
        CHECK(rows[2].avg_rounds == doctest::Approx(1.5310).epsilon(0.03));
        CHECK(rows[0].avg_rounds > rows[1].avg_rounds);
        CHECK(rows[1].avg_rounds > rows[2].avg_rounds);
        CHECK(rows[0].classification_accuracy > rows[2].classification_accuracy);
        CHECK_THROWS_AS(sweep_operating_curve(kMmlu, {0.5}, 8, 100, 1), config_error);
    }

    TEST_CASE("sensitivity delta zero reproduces the plain run exactly") {
        const auto rows =
            sensitivity_sweep(kMmlu, {-0.10, 0.0, 0.10}, SprtConfig{}, 10000, 20260517);
        REQUIRE(rows.size() == 3);
        const auto rep = simulate(mmlu_scenario(10000));
        CHECK(rows[1].avg_rounds == rep.avg_rounds);
        CHECK(rows[1].classification_accuracy == rep.classification_accuracy);
        CHECK(rows[1].classification_accuracy_strict ==
              rep.classification_accuracy_strict);
        CHECK(rows[0].avg_rounds - rows[1].avg_rounds ==
              doctest::Approx(0.1816).epsilon(0.3));
        CHECK(rows[2].avg_rounds - rows[1].avg_rounds ==
              doctest::Approx(-0.1498).epsilon(0.3));
        CHECK_THROWS_AS(sensitivity_sweep(kMmlu, {0.3}, SprtConfig{}, 100, 1),
                        config_error);
    }

    TEST_CASE("difficulty tertiles order by divergence") {
        const auto rows = difficulty_tertiles(SprtConfig{}, 10000, 20260517);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].tertile == "easy");
        CHECK(rows[1].tertile == "medium");
        CHECK(rows[2].tertile == "hard");
        CHECK(rows[0].kl == doctest::Approx(3.8).epsilon(1e-12));
        CHECK(rows[1].kl == doctest::Approx(1.990357808497016).epsilon(1e-12));
        CHECK(rows[2].kl == doctest::Approx(0.7027856144021105).epsilon(1e-12));
        CHECK(rows[0].avg_rounds == doctest::Approx(1.5376).epsilon(0.03));
        CHECK(rows[2].avg_rounds == doctest::Approx(4.6774).epsilon(0.02));
        CHECK(rows[0].cap_rate < 0.002);
        CHECK(rows[2].cap_rate == doctest::Approx(0.14221).epsilon(0.08));
        CHECK(rows[2].classification_accuracy == doctest::Approx(0.94647).epsilon(0.01));
    }

    TEST_CASE("baselines leave the sequential test on the Pareto frontier") {
        const auto rows = run_baselines(kMmlu, SprtConfig{}, 10000, 20260517);
        REQUIRE(rows.size() == 5);
        CHECK(rows[0].rule == "sprt");
        CHECK(rows[1].rule == "fixed_rounds");
        CHECK(rows[2].rule == "single_round");
        CHECK(rows[3].rule == "threshold_score");
        CHECK(rows[4].rule == "threshold_stability");
        CHECK(rows[1].avg_rounds == 5.0);
        CHECK(rows[2].avg_rounds == 1.0);
        CHECK(std::isnan(rows[1].classification_accuracy));
        CHECK(std::isnan(rows[2].classification_accuracy));
        CHECK(rows[0].avg_rounds == doctest::Approx(2.3806).epsilon(0.03));
        CHECK(rows[3].avg_rounds == doctest::Approx(6.777).epsilon(0.02));
        CHECK(rows[3].classification_accuracy == doctest::Approx(0.7948).epsilon(0.02));
        CHECK(rows[4].avg_rounds == doctest::Approx(5.152).epsilon(0.02));
        CHECK(rows[4].classification_accuracy == doctest::Approx(0.5007).epsilon(0.04));
        CHECK(rows[0].avg_rounds < rows[3].avg_rounds);
        CHECK(rows[0].classification_accuracy > rows[3].classification_accuracy);
        CHECK(rows[0].avg_rounds < rows[4].avg_rounds);
        CHECK(rows[0].classification_accuracy > rows[4].classification_accuracy);
    }
}

TEST_SUITE("asymptotics") {
    TEST_CASE("expected-round approximations") {
        const auto [h1, h0] = asymptotic_rounds(kMmlu, 0.05, 0.05);
        CHECK(h1 == doctest::Approx(1.3314164267031432).epsilon(1e-12));
        CHECK(h0 == doctest::Approx(1.441392459681048).epsilon(1e-12));
    }

    TEST_CASE("mirrored pairs need equal rounds on both sides") {
        const auto [h1, h0] = asymptotic_rounds(planning_pair("easy"), 0.05, 0.05);
        CHECK(h1 == doctest::Approx(h0).epsilon(1e-12));
    }

    TEST_CASE("fixed-sample bound") {
        CHECK(chernoff_fixed_sample_bound(kMmlu, 0.05, 0.05) ==
              doctest::Approx(3.1345692405666092).epsilon(1e-12));
    }

    TEST_CASE("degenerate pairs are rejected") {
        const LikelihoodPair same{{4.0, 4.0}, {4.0, 4.0}, ""};
        CHECK_THROWS_AS(asymptotic_rounds(same, 0.05, 0.05), data_error);
        CHECK_THROWS_AS(chernoff_fixed_sample_bound(same, 0.05, 0.05), data_error);
    }
}

TEST_SUITE("pairs_and_serialization") {
    TEST_CASE("built-in pair table") {
        const auto names = planning_pair_names();
        REQUIRE(names.size() == 7);
        for (const auto& name : names) {
            const auto pair = planning_pair(name);
            CHECK(pair.domain_label == name);
            CHECK(pair.f0.a > 0.0);
        }
        const auto gsm = planning_pair("gsm8k-real");
        CHECK(gsm.f0.a == 13.21);
        CHECK(gsm.f1.b == 0.10);
        CHECK_THROWS_AS(planning_pair("mnist"), config_error);
    }

    TEST_CASE("report json carries nulls for empty classes") {
        Scenario sc = mmlu_scenario(200);
        sc.mode = HypothesisMode::h1_only();
        const auto rep = simulate(sc);
        CHECK(std::isnan(rep.alpha_hat));
        const auto j = nlohmann::json::parse(report_to_json(rep));
        CHECK(j.at("alpha_hat").is_null());
        CHECK(j.at("e_rounds_h0").is_null());
        CHECK(j.at("n_h0").get<long>() == 0);
        CHECK(j.at("n_h1").get<long>() == 200);
        CHECK(j.at("avg_rounds").get<double>() == rep.avg_rounds);
        CHECK(j.at("round_quantiles").at("p50").get<int>() == rep.round_quantiles.p50);
    }

    TEST_CASE("csv emitters") {
        const auto curve = sweep_operating_curve(kMmlu, {0.05, 0.2}, 8, 500, 1);
        const auto csv = operating_curve_csv(curve);
        CHECK(csv.rfind("alpha,avg_rounds,classification_accuracy\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
        CHECK(csv.find("\n0.05,") != std::string::npos);

        const auto rows = difficulty_tertiles(SprtConfig{}, 500, 1);
        const auto tcsv = tertiles_csv(rows);
        CHECK(tcsv.rfind("tertile,kl,avg_rounds,cap_rate,classification_accuracy\n", 0) ==
              0);
        CHECK(tcsv.find("\neasy,3.8,") != std::string::npos);

        const auto sens = sensitivity_sweep(kMmlu, {0.0}, SprtConfig{}, 500, 1);
        CHECK(sensitivity_csv(sens).rfind(
                  "delta,avg_rounds,classification_accuracy,"
                  "classification_accuracy_strict\n", 0) == 0);

        const auto base = run_baselines(kMmlu, SprtConfig{}, 500, 1);
        const auto bcsv = baselines_csv(base);
        CHECK(bcsv.rfind("rule,avg_rounds,classification_accuracy,cap_rate\n", 0) == 0);
        CHECK(bcsv.find("\nsprt,") != std::string::npos);
        CHECK(bcsv.find("nan") != std::string::npos);
    }
}
