#include "seqcon/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "seqcon/numeric.hpp"

namespace seqcon {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

std::string to_string(Hypothesis h) {
    return h == Hypothesis::H1 ? "H1" : "H0";
}

std::string StoppingRule::name() const {
    switch (kind) {
    case Kind::Sprt: return "sprt";
    case Kind::FixedRounds: return "fixed_rounds";
    case Kind::SingleRound: return "single_round";
    case Kind::ThresholdScore: return "threshold_score";
    case Kind::ThresholdStability: return "threshold_stability";
    }
    throw domain_error("unknown stopping rule");
}

void validate(const Scenario& scenario) {
    validate(scenario.pair.f0);
    validate(scenario.pair.f1);
    if (scenario.truth_pair) {
        validate(scenario.truth_pair->f0);
        validate(scenario.truth_pair->f1);
    }
    validate(scenario.config);
    if (!(scenario.rho >= 0.0 && scenario.rho < 1.0))
        throw config_error("rho must lie in [0, 1)");
    if (scenario.mode.kind == HypothesisMode::Kind::Mixture &&
        !(scenario.mode.pi >= 0.0 && scenario.mode.pi <= 1.0))
        throw config_error("mixture prior must lie in [0, 1]");
    if (scenario.n_trials <= 0)
        throw config_error("n_trials must be positive");
    switch (scenario.rule.kind) {
    case StoppingRule::Kind::FixedRounds:
        if (scenario.rule.fixed_rounds < 1)
            throw config_error("fixed_rounds must be >= 1");
        break;
    case StoppingRule::Kind::ThresholdScore:
        if (!(scenario.rule.cut > 0.0 && scenario.rule.cut < 1.0))
            throw config_error("threshold cut must lie in (0, 1)");
        break;
    case StoppingRule::Kind::ThresholdStability:
        if (!(scenario.rule.delta > 0.0))
            throw config_error("stability delta must be positive");
        break;
    default:
        break;
    }
}

std::vector<double> gen_iid(const LikelihoodPair& pair, Hypothesis hyp, int r_max,
                            RngStream& rng) {
    validate(pair.f0);
    validate(pair.f1);
    if (r_max < 1) throw config_error("r_max must be >= 1");
    const BetaParams& dist = (hyp == Hypothesis::H1) ? pair.f1 : pair.f0;
    std::vector<double> path(static_cast<size_t>(r_max));
    for (double& s : path) s = sample(dist, rng);
    return path;
}

std::vector<double> gen_ar1(const LikelihoodPair& pair, Hypothesis hyp, double rho,
                            int r_max, RngStream& rng) {
    validate(pair.f0);
    validate(pair.f1);
    if (r_max < 1) throw config_error("r_max must be >= 1");
    if (!(rho >= 0.0 && rho < 1.0)) throw config_error("rho must lie in [0, 1)");
    const BetaParams& dist = (hyp == Hypothesis::H1) ? pair.f1 : pair.f0;
    const double root = std::sqrt(1.0 - rho * rho);
    std::vector<double> path(static_cast<size_t>(r_max));
    double z = 0.0;
    for (int r = 0; r < r_max; ++r) {
        const double w = normal_quantile(rng.next_uniform());
        z = (r == 0) ? w : rho * z + root * w;
        path[static_cast<size_t>(r)] = beta_quantile(dist.a, dist.b, normal_cdf(z));
    }
    return path;
}

namespace {

// Everything a trial needs, precomputed once per scenario.
struct EngineCtx {
    StoppingRule rule;
    double threshold_a = 0.0;
    double threshold_b = 0.0;
    double llr_c = 0.0;
    double llr_da = 0.0;
    double llr_db = 0.0;
    double eps = 1e-6;
    int round_limit = 8;
    int r_max = 8;
    BetaParams gen[2];  // generator per hypothesis, indexed by H0=0 / H1=1
    double rho = 0.0;
    double rho_root = 1.0;
    HypothesisMode mode;
    long n_trials = 0;
    std::uint64_t seed = 0;
    long total_trials = 0;
};

EngineCtx make_ctx(const Scenario& sc) {
    validate(sc);
    EngineCtx ctx;
    ctx.rule = sc.rule;
    auto [a, b] = thresholds(sc.config);
    ctx.threshold_a = a;
    ctx.threshold_b = b;
    ctx.llr_c = sc.pair.llr_constant();
    ctx.llr_da = sc.pair.f1.a - sc.pair.f0.a;
    ctx.llr_db = sc.pair.f1.b - sc.pair.f0.b;
    ctx.eps = sc.config.epsilon_clip;
    ctx.r_max = sc.config.r_max;
    switch (sc.rule.kind) {
    case StoppingRule::Kind::FixedRounds: ctx.round_limit = sc.rule.fixed_rounds; break;
    case StoppingRule::Kind::SingleRound: ctx.round_limit = 1; break;
    default: ctx.round_limit = sc.config.r_max; break;
    }
    const LikelihoodPair& truth = sc.truth_pair ? *sc.truth_pair : sc.pair;
    ctx.gen[0] = truth.f0;
    ctx.gen[1] = truth.f1;
    ctx.rho = sc.rho;
    ctx.rho_root = std::sqrt(1.0 - sc.rho * sc.rho);
    ctx.mode = sc.mode;
    ctx.n_trials = sc.n_trials;
    ctx.seed = sc.seed;
    ctx.total_trials =
        (sc.mode.kind == HypothesisMode::Kind::Both) ? 2 * sc.n_trials : sc.n_trials;
    return ctx;
}

struct TrialOut {
    Hypothesis hyp;
    DecisionKind kind;
    int rounds;
};

// Maps a global trial index to (stream id, hypothesis); Mixture resolves the
// hypothesis from the stream's first uniform.
TrialOut run_one(const EngineCtx& ctx, long t, double* lambda_buf) {
    std::uint64_t stream_id;
    Hypothesis hyp;
    switch (ctx.mode.kind) {
    case HypothesisMode::Kind::Both:
        stream_id = static_cast<std::uint64_t>(t);
        hyp = (t < ctx.n_trials) ? Hypothesis::H1 : Hypothesis::H0;
        break;
    case HypothesisMode::Kind::H1Only:
        stream_id = static_cast<std::uint64_t>(t);
        hyp = Hypothesis::H1;
        break;
    case HypothesisMode::Kind::H0Only:
        stream_id = static_cast<std::uint64_t>(ctx.n_trials + t);
        hyp = Hypothesis::H0;
        break;
    default:
        stream_id = static_cast<std::uint64_t>(t);
        hyp = Hypothesis::H0;  // resolved below
        break;
    }
    RngStream rng(ctx.seed, stream_id);
    if (ctx.mode.kind == HypothesisMode::Kind::Mixture)
        hyp = (rng.next_uniform() < ctx.mode.pi) ? Hypothesis::H1 : Hypothesis::H0;

    const BetaParams& dist = ctx.gen[hyp == Hypothesis::H1 ? 1 : 0];
    double lambda = 0.0;
    double z = 0.0;
    double prev_s = 0.0;
    for (int r = 1; r <= ctx.round_limit; ++r) {
        double s;
        if (ctx.rho == 0.0) {
            s = sample(dist, rng);
        } else {
            const double w = normal_quantile(rng.next_uniform());
            z = (r == 1) ? w : ctx.rho * z + ctx.rho_root * w;
            s = beta_quantile(dist.a, dist.b, normal_cdf(z));
        }
        const double sc = clip_score(s, ctx.eps);
        lambda += ctx.llr_c + ctx.llr_da * std::log(sc) + ctx.llr_db * std::log1p(-sc);
        lambda_buf[r - 1] = lambda;

        switch (ctx.rule.kind) {
        case StoppingRule::Kind::Sprt:
            if (lambda >= ctx.threshold_a) return {hyp, DecisionKind::Consensus, r};
            if (lambda <= ctx.threshold_b) return {hyp, DecisionKind::NoConsensus, r};
            if (r == ctx.r_max) return {hyp, DecisionKind::Capped, r};
            break;
        case StoppingRule::Kind::FixedRounds:
            if (r == ctx.rule.fixed_rounds) return {hyp, DecisionKind::Stopped, r};
            break;
        case StoppingRule::Kind::SingleRound:
            return {hyp, DecisionKind::Stopped, r};
        case StoppingRule::Kind::ThresholdScore:
            if (sc >= ctx.rule.cut) return {hyp, DecisionKind::Consensus, r};
            if (r == ctx.r_max) return {hyp, DecisionKind::Capped, r};
            break;
        case StoppingRule::Kind::ThresholdStability:
            if (r >= 2 && std::fabs(sc - prev_s) <= ctx.rule.delta)
                return {hyp, DecisionKind::Consensus, r};
            if (r == ctx.r_max) return {hyp, DecisionKind::Capped, r};
            break;
        }
        prev_s = sc;
    }
    throw state_error("trial loop exited without a decision");
}

bool strict_correct(Hypothesis hyp, DecisionKind kind) {
    return (kind == DecisionKind::Consensus && hyp == Hypothesis::H1) ||
           (kind == DecisionKind::NoConsensus && hyp == Hypothesis::H0);
}

// Resolved call: Consensus -> H1, NoConsensus -> H0; Capped falls back to the
// final Lambda's sign for the SPRT and to H0 (never fired) for threshold
// rules. Stopped has no call.
bool resolved_correct(const EngineCtx& ctx, Hypothesis hyp, DecisionKind kind,
                      double final_lambda) {
    switch (kind) {
    case DecisionKind::Consensus: return hyp == Hypothesis::H1;
    case DecisionKind::NoConsensus: return hyp == Hypothesis::H0;
    case DecisionKind::Capped:
        if (ctx.rule.kind == StoppingRule::Kind::Sprt)
            return (final_lambda > 0.0) == (hyp == Hypothesis::H1);
        return hyp == Hypothesis::H0;
    default:
        throw state_error("no classification call for this decision");
    }
}

struct Agg {
    long n[2] = {0, 0};
    long long sum_rounds[2] = {0, 0};
    long consensus[2] = {0, 0};
    long no_consensus[2] = {0, 0};
    long capped[2] = {0, 0};
    long stopped[2] = {0, 0};
    long classifiable = 0;
    long resolved_ok = 0;
    long strict_ok = 0;
    std::vector<long> rounds_hist;                 // pooled, index = round
    std::vector<std::vector<double>> lambda_at[2]; // [hyp][round-1] -> active Lambdas

    explicit Agg(int round_limit) {
        rounds_hist.assign(static_cast<size_t>(round_limit) + 1, 0);
        lambda_at[0].resize(static_cast<size_t>(round_limit));
        lambda_at[1].resize(static_cast<size_t>(round_limit));
    }

    void add(const EngineCtx& ctx, const TrialOut& out, const double* lambda_buf) {
        const int h = out.hyp == Hypothesis::H1 ? 1 : 0;
        n[h] += 1;
        sum_rounds[h] += out.rounds;
        rounds_hist[static_cast<size_t>(out.rounds)] += 1;
        switch (out.kind) {
        case DecisionKind::Consensus: consensus[h] += 1; break;
        case DecisionKind::NoConsensus: no_consensus[h] += 1; break;
        case DecisionKind::Capped: capped[h] += 1; break;
        case DecisionKind::Stopped: stopped[h] += 1; break;
        default: throw state_error("non-terminal trial decision");
        }
        if (out.kind != DecisionKind::Stopped) {
            classifiable += 1;
            if (resolved_correct(ctx, out.hyp, out.kind, lambda_buf[out.rounds - 1]))
                resolved_ok += 1;
            if (strict_correct(out.hyp, out.kind)) strict_ok += 1;
        }
        for (int r = 0; r < out.rounds; ++r)
            lambda_at[h][static_cast<size_t>(r)].push_back(lambda_buf[r]);
    }

    void merge(Agg&& other) {
        for (int h = 0; h < 2; ++h) {
            n[h] += other.n[h];
            sum_rounds[h] += other.sum_rounds[h];
            consensus[h] += other.consensus[h];
            no_consensus[h] += other.no_consensus[h];
            capped[h] += other.capped[h];
            stopped[h] += other.stopped[h];
            for (size_t r = 0; r < lambda_at[h].size(); ++r) {
                auto& dst = lambda_at[h][r];
                auto& src = other.lambda_at[h][r];
                dst.insert(dst.end(), src.begin(), src.end());
                src.clear();
                src.shrink_to_fit();
            }
        }
        classifiable += other.classifiable;
        resolved_ok += other.resolved_ok;
        strict_ok += other.strict_ok;
        for (size_t r = 0; r < rounds_hist.size(); ++r) rounds_hist[r] += other.rounds_hist[r];
    }
};

std::optional<double> median_of(std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    const size_t k = v.size();
    const size_t mid = k / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
    const double hi = v[mid];
    if (k % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
    return 0.5 * (lo + hi);
}

int quantile_nearest_rank(const std::vector<long>& hist, long n, long num, long den) {
    const long target = (num * n + den - 1) / den;  // ceil(num/den * n)
    long cum = 0;
    for (size_t r = 1; r < hist.size(); ++r) {
        cum += hist[r];
        if (cum >= target) return static_cast<int>(r);
    }
    return static_cast<int>(hist.size()) - 1;
}

double ratio(long num, long den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : kNan;
}

SimulationReport finalize(const EngineCtx& ctx, Agg& agg) {
    SimulationReport rep;
    rep.n_h0 = agg.n[0];
    rep.n_h1 = agg.n[1];
    rep.e_rounds_h0 = ratio(static_cast<long>(agg.sum_rounds[0]), agg.n[0]);
    rep.e_rounds_h1 = ratio(static_cast<long>(agg.sum_rounds[1]), agg.n[1]);
    if (agg.n[0] > 0 && agg.n[1] > 0)
        rep.avg_rounds = 0.5 * (rep.e_rounds_h0 + rep.e_rounds_h1);
    else
        rep.avg_rounds = agg.n[1] > 0 ? rep.e_rounds_h1 : rep.e_rounds_h0;
    rep.alpha_hat = ratio(agg.consensus[0], agg.n[0]);
    rep.beta_hat = ratio(agg.no_consensus[1], agg.n[1]);
    const long total = agg.n[0] + agg.n[1];
    rep.cap_rate = ratio(agg.capped[0] + agg.capped[1], total);
    rep.frac_consensus = ratio(agg.consensus[0] + agg.consensus[1], total);
    rep.frac_no_consensus = ratio(agg.no_consensus[0] + agg.no_consensus[1], total);
    rep.frac_capped = rep.cap_rate;
    rep.frac_stopped = ratio(agg.stopped[0] + agg.stopped[1], total);
    rep.classification_accuracy = ratio(agg.resolved_ok, agg.classifiable);
    rep.classification_accuracy_strict = ratio(agg.strict_ok, agg.classifiable);
    rep.round_quantiles.p50 = quantile_nearest_rank(agg.rounds_hist, total, 1, 2);
    rep.round_quantiles.p95 = quantile_nearest_rank(agg.rounds_hist, total, 19, 20);
    rep.round_quantiles.p99 = quantile_nearest_rank(agg.rounds_hist, total, 99, 100);
    for (int r = 0; r < ctx.round_limit; ++r) {
        ConditionalMedianRow row;
        row.round = r + 1;
        row.median_h1 = median_of(agg.lambda_at[1][static_cast<size_t>(r)]);
        row.median_h0 = median_of(agg.lambda_at[0][static_cast<size_t>(r)]);
        if (row.median_h1 || row.median_h0)
            rep.conditional_median_lambda.push_back(row);
    }
    return rep;
}

} // namespace

SimulationReport simulate(const Scenario& scenario, int n_workers) {
    const EngineCtx ctx = make_ctx(scenario);
    const long total = ctx.total_trials;
    constexpr long kChunk = 8192;
    const long n_chunks = (total + kChunk - 1) / kChunk;
    if (n_workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        n_workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    n_workers = static_cast<int>(std::min<long>(n_workers, n_chunks));

    auto run_chunk = [&ctx](long chunk) {
        Agg agg(ctx.round_limit);
        std::vector<double> buf(static_cast<size_t>(ctx.round_limit));
        const long lo = chunk * kChunk;
        const long hi = std::min(lo + kChunk, ctx.total_trials);
        for (long t = lo; t < hi; ++t) {
            const TrialOut out = run_one(ctx, t, buf.data());
            agg.add(ctx, out, buf.data());
        }
        return agg;
    };

    Agg agg(ctx.round_limit);
    if (n_workers <= 1) {
        for (long chunk = 0; chunk < n_chunks; ++chunk) {
            Agg part = run_chunk(chunk);
            agg.merge(std::move(part));
        }
    } else {
        std::vector<std::optional<Agg>> parts(static_cast<size_t>(n_chunks));
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const long chunk = next.fetch_add(1);
                    if (chunk >= n_chunks) return;
                    parts[static_cast<size_t>(chunk)].emplace(run_chunk(chunk));
                }
            });
        }
        for (auto& th : pool) th.join();
        // Merge in chunk order so the aggregate never depends on scheduling.
        for (auto& part : parts) agg.merge(std::move(*part));
    }
    return finalize(ctx, agg);
}

std::vector<TrialRecord> run_trials(const Scenario& scenario) {
    const EngineCtx ctx = make_ctx(scenario);
    std::vector<TrialRecord> records(static_cast<size_t>(ctx.total_trials));
    std::vector<double> buf(static_cast<size_t>(ctx.round_limit));
    for (long t = 0; t < ctx.total_trials; ++t) {
        const TrialOut out = run_one(ctx, t, buf.data());
        TrialRecord& rec = records[static_cast<size_t>(t)];
        rec.hypothesis = out.hyp;
        rec.decision = {out.kind, out.rounds};
        rec.rounds = out.rounds;
        rec.lambda_trace.assign(buf.begin(), buf.begin() + out.rounds);
        rec.classification_correct = strict_correct(out.hyp, out.kind);
    }
    return records;
}

std::vector<ConditionalMedianRow> conditional_median_trace(
    const std::vector<TrialRecord>& records) {
    size_t max_rounds = 0;
    for (const auto& rec : records)
        max_rounds = std::max(max_rounds, rec.lambda_trace.size());
    std::vector<std::vector<double>> at[2];
    at[0].resize(max_rounds);
    at[1].resize(max_rounds);
    for (const auto& rec : records) {
        const int h = rec.hypothesis == Hypothesis::H1 ? 1 : 0;
        for (size_t r = 0; r < rec.lambda_trace.size(); ++r)
            at[h][r].push_back(rec.lambda_trace[r]);
    }
    std::vector<ConditionalMedianRow> rows;
    for (size_t r = 0; r < max_rounds; ++r) {
        ConditionalMedianRow row;
        row.round = static_cast<int>(r) + 1;
        row.median_h1 = median_of(at[1][r]);
        row.median_h0 = median_of(at[0][r]);
        if (row.median_h1 || row.median_h0) rows.push_back(row);
    }
    return rows;
}

std::vector<OperatingPoint> sweep_operating_curve(const LikelihoodPair& pair,
                                                  std::vector<double> alphas, int r_max,
                                                  long n_trials, std::uint64_t seed) {
    for (double a : alphas)
        if (!(a > 0.0 && a < 0.5))
            throw config_error("operating-curve alphas must lie in (0, 0.5)");
    std::sort(alphas.begin(), alphas.end());
    std::vector<OperatingPoint> rows;
    rows.reserve(alphas.size());
    for (double a : alphas) {
        Scenario sc;
        sc.pair = pair;
        sc.config.alpha = a;
        sc.config.beta = a;
        sc.config.r_max = r_max;
        sc.n_trials = n_trials;
        sc.seed = seed;
        const SimulationReport rep = simulate(sc);
        rows.push_back({a, rep.avg_rounds, rep.classification_accuracy});
    }
    return rows;
}

std::vector<SensitivityPoint> sensitivity_sweep(const LikelihoodPair& pair,
                                                std::vector<double> deltas,
                                                const SprtConfig& config, long n_trials,
                                                std::uint64_t seed) {
    std::vector<SensitivityPoint> rows;
    rows.reserve(deltas.size());
    for (double d : deltas) {
        if (!(d >= -0.25 && d <= 0.25))
            throw config_error("sensitivity deltas must lie in [-0.25, 0.25]");
        const double scale = 1.0 + d;
        LikelihoodPair monitor = pair;
        monitor.f0.a *= scale;
        monitor.f0.b *= scale;
        monitor.f1.a *= scale;
        monitor.f1.b *= scale;
        validate(monitor.f0);
        validate(monitor.f1);
        Scenario sc;
        sc.pair = monitor;
        sc.truth_pair = pair;
        sc.config = config;
        sc.n_trials = n_trials;
        sc.seed = seed;
        const SimulationReport rep = simulate(sc);
        rows.push_back({d, rep.avg_rounds, rep.classification_accuracy,
                        rep.classification_accuracy_strict});
    }
    return rows;
}

std::vector<TertileRow> difficulty_tertiles(const SprtConfig& config, long n_trials,
                                            std::uint64_t seed) {
    const std::pair<std::string, std::string> tertiles[] = {
        {"easy", "easy"}, {"medium", "mmlu-planning"}, {"hard", "hard"}};
    std::vector<TertileRow> rows;
    for (const auto& [label, pair_name] : tertiles) {
        Scenario sc;
        sc.pair = planning_pair(pair_name);
        sc.config = config;
        sc.n_trials = n_trials;
        sc.seed = seed;
        const SimulationReport rep = simulate(sc);
        rows.push_back({label, kl_divergence(sc.pair.f1, sc.pair.f0), rep.avg_rounds,
                        rep.cap_rate, rep.classification_accuracy});
    }
    return rows;
}

std::pair<double, double> asymptotic_rounds(const LikelihoodPair& pair, double alpha,
                                            double beta) {
    SprtConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    validate(cfg);
    const double kl10 = kl_divergence(pair.f1, pair.f0);
    const double kl01 = kl_divergence(pair.f0, pair.f1);
    if (!(kl10 > 0.0) || !(kl01 > 0.0))
        throw data_error("uninformative pair: both directional KLs must be positive");
    const auto [a, b] = thresholds(cfg);
    const double e_h1 = ((1.0 - beta) * a + beta * b) / kl10;
    const double e_h0 = ((1.0 - alpha) * (-b) - alpha * a) / kl01;
    return {e_h1, e_h0};
}

double chernoff_fixed_sample_bound(const LikelihoodPair& pair, double alpha, double beta) {
    SprtConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = beta;
    validate(cfg);
    const double kl10 = kl_divergence(pair.f1, pair.f0);
    const double kl01 = kl_divergence(pair.f0, pair.f1);
    if (!(kl10 > 0.0) || !(kl01 > 0.0))
        throw data_error("uninformative pair: both directional KLs must be positive");
    return std::log(1.0 / alpha) / kl10 + std::log(1.0 / beta) / kl01;
}

std::vector<BaselineRow> run_baselines(const LikelihoodPair& pair, const SprtConfig& config,
                                       long n_trials, std::uint64_t seed) {
    const StoppingRule rules[] = {
        StoppingRule::sprt(), StoppingRule::fixed(5), StoppingRule::single(),
        StoppingRule::threshold_score(), StoppingRule::threshold_stability()};
    std::vector<BaselineRow> rows;
    for (const StoppingRule& rule : rules) {
        Scenario sc;
        sc.pair = pair;
        sc.rule = rule;
        sc.config = config;
        sc.mode = HypothesisMode::mixture(0.5);
        sc.n_trials = n_trials;
        sc.seed = seed;
        const SimulationReport rep = simulate(sc);
        rows.push_back({rule.name(), rep.avg_rounds, rep.classification_accuracy,
                        rep.cap_rate});
    }
    return rows;
}

LikelihoodPair planning_pair(const std::string& name) {
    if (name == "mmlu-planning") return {{3.5, 6.0}, {6.0, 3.0}, name};
    if (name == "gsm8k-planning") return {{3.5, 5.5}, {4.5, 2.0}, name};
    if (name == "judgebench-planning") return {{2.0, 5.0}, {4.0, 2.5}, name};
    if (name == "easy") return {{3.0, 7.0}, {7.0, 3.0}, name};
    if (name == "hard") return {{3.8, 5.5}, {5.5, 3.8}, name};
    if (name == "mmlu-real") return {{2.65, 0.14}, {1.26, 0.10}, name};
    if (name == "gsm8k-real") return {{13.21, 21.25}, {0.55, 0.10}, name};
    throw config_error("unknown pair name: " + name +
                       " (expected one of mmlu-planning, gsm8k-planning, "
                       "judgebench-planning, easy, hard, mmlu-real, gsm8k-real)");
}

std::vector<std::string> planning_pair_names() {
    return {"mmlu-planning", "gsm8k-planning", "judgebench-planning",
            "easy", "hard", "mmlu-real", "gsm8k-real"};
}

std::string report_to_json(const SimulationReport& report) {
    nlohmann::json j;
    j["n_h1"] = report.n_h1;
    j["n_h0"] = report.n_h0;
    j["e_rounds_h1"] = report.e_rounds_h1;
    j["e_rounds_h0"] = report.e_rounds_h0;
    j["avg_rounds"] = report.avg_rounds;
    j["alpha_hat"] = report.alpha_hat;
    j["beta_hat"] = report.beta_hat;
    j["cap_rate"] = report.cap_rate;
    j["breakdown"] = {{"consensus", report.frac_consensus},
                      {"no_consensus", report.frac_no_consensus},
                      {"capped", report.frac_capped},
                      {"stopped", report.frac_stopped}};
    j["classification_accuracy"] = report.classification_accuracy;
    j["classification_accuracy_strict"] = report.classification_accuracy_strict;
    j["round_quantiles"] = {{"p50", report.round_quantiles.p50},
                            {"p95", report.round_quantiles.p95},
                            {"p99", report.round_quantiles.p99}};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.conditional_median_lambda) {
        nlohmann::json r;
        r["round"] = row.round;
        r["h1"] = row.median_h1 ? nlohmann::json(*row.median_h1) : nlohmann::json();
        r["h0"] = row.median_h0 ? nlohmann::json(*row.median_h0) : nlohmann::json();
        rows.push_back(r);
    }
    j["conditional_median_lambda"] = rows;
    return j.dump(2) + "\n";
}

std::string operating_curve_csv(const std::vector<OperatingPoint>& rows) {
    std::string out = "alpha,avg_rounds,classification_accuracy\n";
    for (const auto& r : rows)
        out += fmt(r.alpha) + "," + fmt(r.avg_rounds) + "," +
               fmt(r.classification_accuracy) + "\n";
    return out;
}

std::string sensitivity_csv(const std::vector<SensitivityPoint>& rows) {
    std::string out =
        "delta,avg_rounds,classification_accuracy,classification_accuracy_strict\n";
    for (const auto& r : rows)
        out += fmt(r.delta) + "," + fmt(r.avg_rounds) + "," +
               fmt(r.classification_accuracy) + "," +
               fmt(r.classification_accuracy_strict) + "\n";
    return out;
}

std::string tertiles_csv(const std::vector<TertileRow>& rows) {
    std::string out = "tertile,kl,avg_rounds,cap_rate,classification_accuracy\n";
    for (const auto& r : rows)
        out += r.tertile + "," + fmt(r.kl) + "," + fmt(r.avg_rounds) + "," +
               fmt(r.cap_rate) + "," + fmt(r.classification_accuracy) + "\n";
    return out;
}

std::string baselines_csv(const std::vector<BaselineRow>& rows) {
    std::string out = "rule,avg_rounds,classification_accuracy,cap_rate\n";
    for (const auto& r : rows)
        out += r.rule + "," + fmt(r.avg_rounds) + "," + fmt(r.classification_accuracy) +
               "," + fmt(r.cap_rate) + "\n";
    return out;
}

} // namespace seqcon
