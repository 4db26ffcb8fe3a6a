#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqcon/calibration.hpp"
#include "seqcon/manifest.hpp"
#include "seqcon/openai_client.hpp"
#include "seqcon/orchestrator.hpp"
#include "seqcon/simulation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace seqcon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUninformative = 3;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw data_error("write failed for " + path);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw data_error("cannot create directory " + dir + ": " + ec.message());
}

struct SimulateArgs {
    std::string scenario;
    std::vector<double> pair_shapes;  // a0 b0 a1 b1
    double alpha = 0.05, beta = 0.05;
    int r_max = 8;
    double rho = 0.0;
    double epsilon = 1e-6;
    long n_trials = 50000;
    std::uint64_t seed = 20260517;
    double mixture_pi = -1.0;  // <0 means per-hypothesis Both mode
    bool zero_drift = false;
    std::string out_dir;
};

LikelihoodPair resolve_pair(const std::string& scenario,
                            const std::vector<double>& shapes) {
    if (!scenario.empty() && !shapes.empty())
        throw CLI::ValidationError("pass either --scenario or --pair, not both");
    if (!scenario.empty()) {
        try {
            return planning_pair(scenario);
        } catch (const config_error& e) {
            throw CLI::ValidationError(e.what());
        }
    }
    if (shapes.size() == 4) {
        LikelihoodPair pair{{shapes[0], shapes[1]}, {shapes[2], shapes[3]}, "custom"};
        validate(pair.f0);
        validate(pair.f1);
        return pair;
    }
    throw CLI::ValidationError("need --scenario NAME or --pair a0 b0 a1 b1");
}

std::string scenario_csv(const std::string& name, const SimulationReport& r) {
    std::string out =
        "scenario,avg_rounds,e_rounds_h1,e_rounds_h0,alpha_hat,beta_hat,cap_rate,"
        "classification_accuracy,classification_accuracy_strict,p50,p95,p99\n";
    out += name + "," + fmt(r.avg_rounds) + "," + fmt(r.e_rounds_h1) + "," +
           fmt(r.e_rounds_h0) + "," + fmt(r.alpha_hat) + "," + fmt(r.beta_hat) + "," +
           fmt(r.cap_rate) + "," + fmt(r.classification_accuracy) + "," +
           fmt(r.classification_accuracy_strict) + "," +
           std::to_string(r.round_quantiles.p50) + "," +
           std::to_string(r.round_quantiles.p95) + "," +
           std::to_string(r.round_quantiles.p99) + "\n";
    return out;
}

int cmd_simulate(const SimulateArgs& args) {
    Scenario sc;
    sc.pair = resolve_pair(args.scenario, args.pair_shapes);
    sc.config.alpha = args.alpha;
    sc.config.beta = args.beta;
    sc.config.r_max = args.r_max;
    sc.config.epsilon_clip = args.epsilon;
    sc.rho = args.rho;
    sc.n_trials = args.n_trials;
    sc.seed = args.seed;
    if (args.mixture_pi >= 0.0) sc.mode = HypothesisMode::mixture(args.mixture_pi);
    if (args.zero_drift) sc.truth_pair = LikelihoodPair{sc.pair.f1, sc.pair.f1, "zero-drift"};

    const SimulationReport rep = simulate(sc);
    const std::string name = args.scenario.empty() ? "custom" : args.scenario;
    std::cout << "scenario=" << name << " rule=sprt avg_rounds=" << fmt(rep.avg_rounds)
              << " alpha_hat=" << fmt(rep.alpha_hat) << " beta_hat=" << fmt(rep.beta_hat)
              << " cap_rate=" << fmt(rep.cap_rate)
              << " accuracy=" << fmt(rep.classification_accuracy) << "\n";

    if (!args.out_dir.empty()) {
        ensure_dir(args.out_dir);
        RunManifest man;
        man.subcommand = "simulate";
        man.started_utc = utc_timestamp();
        man.config = {{"scenario", name},
                      {"pair",
                       {{"a0", sc.pair.f0.a},
                        {"b0", sc.pair.f0.b},
                        {"a1", sc.pair.f1.a},
                        {"b1", sc.pair.f1.b}}},
                      {"alpha", sc.config.alpha},
                      {"beta", sc.config.beta},
                      {"r_max", sc.config.r_max},
                      {"epsilon_clip", sc.config.epsilon_clip},
                      {"rho", sc.rho},
                      {"n_trials", sc.n_trials},
                      {"mixture_pi", args.mixture_pi},
                      {"zero_drift", args.zero_drift}};
        man.seed = sc.seed;
        man.outputs = {"report.json", "report.csv"};
        write_file(args.out_dir + "/report.json", report_to_json(rep));
        write_file(args.out_dir + "/report.csv", scenario_csv(name, rep));
        man.finished_utc = utc_timestamp();
        save_manifest(man, args.out_dir);
    }
    return kExitOk;
}

struct SweepArgs {
    std::string kind;
    std::string scenario = "mmlu-planning";
    std::vector<double> alphas = {0.01, 0.02, 0.05, 0.1, 0.2};
    std::vector<double> deltas = {-0.25, -0.10, 0.0, 0.10, 0.25};
    std::vector<int> r_max_values = {4, 6, 8};
    double alpha = 0.05, beta = 0.05;
    int r_max = 8;
    long n_trials = 50000;
    std::uint64_t seed = 20260517;
    std::string out_dir;
};

int cmd_sweep(const SweepArgs& args) {
    LikelihoodPair pair;
    try {
        pair = planning_pair(args.scenario);
    } catch (const config_error& e) {
        throw CLI::ValidationError(e.what());
    }
    SprtConfig config;
    config.alpha = args.alpha;
    config.beta = args.beta;
    config.r_max = args.r_max;

    std::string csv;
    json cfg{{"kind", args.kind},
             {"scenario", args.scenario},
             {"alpha", args.alpha},
             {"beta", args.beta},
             {"r_max", args.r_max},
             {"n_trials", args.n_trials}};
    if (args.kind == "operating") {
        csv = operating_curve_csv(
            sweep_operating_curve(pair, args.alphas, args.r_max, args.n_trials, args.seed));
        cfg["alphas"] = args.alphas;
    } else if (args.kind == "sensitivity") {
        csv = sensitivity_csv(
            sensitivity_sweep(pair, args.deltas, config, args.n_trials, args.seed));
        cfg["deltas"] = args.deltas;
    } else if (args.kind == "tertiles") {
        csv = tertiles_csv(difficulty_tertiles(config, args.n_trials, args.seed));
    } else if (args.kind == "baselines") {
        csv = baselines_csv(run_baselines(pair, config, args.n_trials, args.seed));
    } else if (args.kind == "rmax") {
        csv = "r_max,avg_rounds,cap_rate,classification_accuracy,"
              "classification_accuracy_strict\n";
        for (int r_max : args.r_max_values) {
            Scenario sc;
            sc.pair = pair;
            sc.config = config;
            sc.config.r_max = r_max;
            sc.n_trials = args.n_trials;
            sc.seed = args.seed;
            const SimulationReport rep = simulate(sc);
            csv += std::to_string(r_max) + "," + fmt(rep.avg_rounds) + "," +
                   fmt(rep.cap_rate) + "," + fmt(rep.classification_accuracy) + "," +
                   fmt(rep.classification_accuracy_strict) + "\n";
        }
        cfg["r_max_values"] = args.r_max_values;
    } else {
        throw CLI::ValidationError(
            "--kind must be operating, sensitivity, tertiles, baselines or rmax");
    }

    std::cout << csv;
    if (!args.out_dir.empty()) {
        ensure_dir(args.out_dir);
        RunManifest man;
        man.subcommand = "sweep";
        man.started_utc = utc_timestamp();
        man.config = cfg;
        man.seed = args.seed;
        man.outputs = {args.kind + ".csv"};
        write_file(args.out_dir + "/" + args.kind + ".csv", csv);
        man.finished_utc = utc_timestamp();
        save_manifest(man, args.out_dir);
    }
    return kExitOk;
}

struct CalibrateArgs {
    std::string in_path;
    std::string out_dir;
    double epsilon = 1e-6;
    long min_scores = 10;
};

std::vector<ScoreSequence> load_sequences(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open " + path);
    std::vector<ScoreSequence> sequences;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            ScoreSequence seq;
            seq.item_id = j.value("item_id", "line-" + std::to_string(line_no));
            seq.task = j.value("task", "");
            const std::string label = j.at("label").get<std::string>();
            if (label == "H1" || label == "correct" || label == "consensus")
                seq.label = Label::H1;
            else if (label == "H0" || label == "incorrect" || label == "no_consensus")
                seq.label = Label::H0;
            else
                throw parse_error("unknown label " + label);
            seq.scores = j.at("scores").get<std::vector<double>>();
            sequences.push_back(std::move(seq));
        } catch (const json::exception& e) {
            throw parse_error(path + " line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return sequences;
}

int cmd_calibrate(const CalibrateArgs& args) {
    CalibrationOptions options;
    options.epsilon_clip = args.epsilon;
    options.min_scores_per_label = args.min_scores;
    const CalibrationArtifact art = calibrate(load_sequences(args.in_path), options);
    std::cout << "task=" << (art.task.empty() ? "unnamed" : art.task)
              << " f0=Beta(" << fmt(art.pair.f0.a) << "," << fmt(art.pair.f0.b) << ")"
              << " f1=Beta(" << fmt(art.pair.f1.a) << "," << fmt(art.pair.f1.b) << ")"
              << " symmetric_kl=" << fmt(art.diagnostics.symmetric_kl)
              << " verdict=" << to_string(art.diagnostics.verdict) << "\n";
    if (!args.out_dir.empty()) {
        ensure_dir(args.out_dir);
        RunManifest man;
        man.subcommand = "calibrate";
        man.started_utc = utc_timestamp();
        man.config = {{"epsilon_clip", args.epsilon},
                      {"min_scores_per_label", args.min_scores}};
        man.inputs = {args.in_path};
        man.outputs = {"calibration.json"};
        save_artifact(art, args.out_dir + "/calibration.json");
        man.finished_utc = utc_timestamp();
        save_manifest(man, args.out_dir);
    }
    return art.diagnostics.verdict == Verdict::Uninformative ? kExitUninformative
                                                             : kExitOk;
}

struct DebateArgs {
    std::string config_path;
    std::string out_dir;
    bool dry_run = false;
};

// Scripted stand-in that echoes the item's gold answer; --dry-run exercises
// the full debate loop without a gateway.
class EchoAgent : public AgentBackend {
public:
    EchoAgent(std::string name, std::string gold)
        : name_(std::move(name)), gold_(std::move(gold)) {}
    std::string name() const override { return name_; }
    std::string respond(const AgentContext&) override {
        return "Final answer: " + gold_ + "\nConfidence: 0.9";
    }

private:
    std::string name_;
    std::string gold_;
};

int cmd_debate(const DebateArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw data_error("cannot open run config " + args.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    json cfg;
    try {
        cfg = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("run config: ") + e.what());
    }

    DebateConfig dc;
    if (cfg.contains("calibration_artifact")) {
        dc.pair = load_artifact(cfg.at("calibration_artifact").get<std::string>()).pair;
    } else if (cfg.contains("pair")) {
        const json& p = cfg.at("pair");
        if (p.is_string()) {
            dc.pair = planning_pair(p.get<std::string>());
        } else {
            dc.pair = {{p.at("a0").get<double>(), p.at("b0").get<double>()},
                       {p.at("a1").get<double>(), p.at("b1").get<double>()},
                       "config"};
        }
    } else {
        throw config_error("run config needs calibration_artifact or pair");
    }
    dc.sprt.alpha = cfg.value("alpha", 0.05);
    dc.sprt.beta = cfg.value("beta", 0.05);
    dc.sprt.r_max = cfg.value("r_max", 8);
    dc.sprt.epsilon_clip = cfg.value("epsilon_clip", 1e-6);
    dc.seed = cfg.value("seed", std::uint64_t{20260517});
    dc.item_parallelism = cfg.value("parallelism", 1);
    const std::string protocol = cfg.value("protocol", "sprt");
    if (protocol == "sprt")
        dc.protocol = StoppingRule::sprt();
    else if (protocol == "fixed_rounds")
        dc.protocol = StoppingRule::fixed(cfg.value("fixed_rounds", 5));
    else if (protocol == "single_round")
        dc.protocol = StoppingRule::single();
    else
        throw config_error("run config protocol must be sprt, fixed_rounds or "
                           "single_round");

    const std::string dataset_path = cfg.at("dataset").get<std::string>();
    const std::vector<DatasetItem> dataset = load_dataset_jsonl(dataset_path);

    std::vector<ItemResult> items;
    if (args.dry_run) {
        dc.record_timing = false;
        std::vector<double> judge_scores = {0.95};
        int n_agents = 3;
        if (cfg.contains("scripted")) {
            judge_scores =
                cfg.at("scripted").value("judge_scores", std::vector<double>{0.95});
            n_agents = cfg.at("scripted").value("n_agents", 3);
        }
        for (const DatasetItem& ds : dataset) {
            std::vector<std::unique_ptr<EchoAgent>> owned;
            std::vector<AgentBackend*> agents;
            for (int i = 0; i < n_agents; ++i) {
                owned.push_back(std::make_unique<EchoAgent>(
                    "echo-" + std::to_string(i + 1), ds.gold));
                agents.push_back(owned.back().get());
            }
            ScriptedJudge judge(judge_scores);
            DebateConfig per_item = dc;
            per_item.task_kind = ds.task_kind;
            items.push_back(debate(ds.id, ds.question, ds.gold, agents, judge, per_item));
        }
    } else {
        if (!cfg.contains("agents") || !cfg.contains("judge"))
            throw config_error("run config needs agents and judge backends");
        std::vector<std::unique_ptr<OpenAiAgent>> owned;
        std::vector<AgentBackend*> agents;
        for (const json& a : cfg.at("agents")) {
            RemoteBackendConfig rc;
            rc.base_url = a.at("base_url").get<std::string>();
            rc.model = a.at("model").get<std::string>();
            rc.temperature = a.value("temperature", 0.7);
            rc.max_tokens = a.value("max_tokens", 1500);
            rc.api_key_env = a.value("api_key_env", std::string{"OPENAI_API_KEY"});
            owned.push_back(std::make_unique<OpenAiAgent>(rc));
            agents.push_back(owned.back().get());
        }
        const json& jj = cfg.at("judge");
        RemoteBackendConfig jc;
        jc.base_url = jj.at("base_url").get<std::string>();
        jc.model = jj.at("model").get<std::string>();
        jc.max_tokens = jj.value("max_tokens", 400);
        jc.api_key_env = jj.value("api_key_env", std::string{"OPENAI_API_KEY"});
        OpenAiJudge judge(jc);
        const BenchmarkResult res = run_benchmark(dataset, agents, judge, dc);
        items = res.items;
    }

    const BenchmarkSummary sum = summarize(items);
    std::cout << "protocol=" << sum.protocol << " n=" << sum.n_items
              << " valid_n=" << sum.valid_n << " accuracy=" << fmt(sum.accuracy)
              << " avg_rounds=" << fmt(sum.avg_rounds)
              << " avg_calls=" << fmt(sum.avg_calls) << "\n";

    if (!args.out_dir.empty()) {
        ensure_dir(args.out_dir);
        RunManifest man;
        man.subcommand = "debate";
        man.started_utc = utc_timestamp();
        json hashed_cfg = cfg;
        hashed_cfg["dry_run"] = args.dry_run;
        man.config = hashed_cfg;
        man.seed = dc.seed;
        man.inputs = {args.config_path, dataset_path};
        man.outputs = {"items.jsonl", "summary.json"};
        write_items_jsonl(items, args.out_dir + "/items.jsonl");
        json s{{"protocol", sum.protocol},
               {"n_items", sum.n_items},
               {"valid_n", sum.valid_n},
               {"accuracy", sum.accuracy},
               {"avg_rounds", sum.avg_rounds},
               {"avg_calls", sum.avg_calls},
               {"wall_seconds", sum.wall_seconds}};
        write_file(args.out_dir + "/summary.json", s.dump(2) + "\n");
        man.finished_utc = utc_timestamp();
        save_manifest(man, args.out_dir);
    }
    return kExitOk;
}

struct GradeArgs {
    std::string items_path;
    std::string out_path;
};

int cmd_grade(const GradeArgs& args) {
    std::vector<ItemResult> items = read_items_jsonl(args.items_path);
    for (ItemResult& item : items)
        if (!item.failed)
            item.correct = grade(item.task_kind, item.extracted_answer, item.gold);
    const BenchmarkSummary sum = summarize(items);
    std::cout << "protocol=" << sum.protocol << " n=" << sum.n_items
              << " valid_n=" << sum.valid_n << " accuracy=" << fmt(sum.accuracy)
              << " avg_rounds=" << fmt(sum.avg_rounds)
              << " avg_calls=" << fmt(sum.avg_calls) << "\n";
    if (!args.out_path.empty()) {
        json s{{"protocol", sum.protocol},
               {"n_items", sum.n_items},
               {"valid_n", sum.valid_n},
               {"accuracy", sum.accuracy},
               {"avg_rounds", sum.avg_rounds},
               {"avg_calls", sum.avg_calls},
               {"wall_seconds", sum.wall_seconds}};
        write_file(args.out_path, s.dump(2) + "\n");
    }
    return kExitOk;
}

struct ReportArgs {
    std::string items_path;
    std::string report_path;
};

int cmd_report(const ReportArgs& args) {
    if (!args.items_path.empty()) {
        const std::vector<ItemResult> items = read_items_jsonl(args.items_path);
        const BenchmarkSummary sum = summarize(items);
        std::cout << "protocol,n_items,valid_n,accuracy,avg_rounds,avg_calls\n"
                  << sum.protocol << "," << sum.n_items << "," << sum.valid_n << ","
                  << fmt(sum.accuracy) << "," << fmt(sum.avg_rounds) << ","
                  << fmt(sum.avg_calls) << "\n";
        return kExitOk;
    }
    if (!args.report_path.empty()) {
        std::ifstream in(args.report_path);
        if (!in) throw data_error("cannot open " + args.report_path);
        std::stringstream buf;
        buf << in.rdbuf();
        json j;
        try {
            j = json::parse(buf.str());
        } catch (const json::parse_error& e) {
            throw parse_error(std::string("report: ") + e.what());
        }
        std::cout << "avg_rounds,alpha_hat,beta_hat,cap_rate,classification_accuracy\n"
                  << j.value("avg_rounds", 0.0) << "," << j.value("alpha_hat", 0.0) << ","
                  << j.value("beta_hat", 0.0) << "," << j.value("cap_rate", 0.0) << ","
                  << j.value("classification_accuracy", 0.0) << "\n";
        return kExitOk;
    }
    throw CLI::ValidationError("report needs --items or --simulation");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential consensus toolkit: Wald SPRT stopping for multi-agent "
                 "debate"};
    app.set_version_flag("--version", std::string("seqcon ") + kToolVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Monte-Carlo characterization of one scenario");
    simulate_cmd->add_option("--scenario", sim.scenario,
                             "named pair: mmlu-planning, gsm8k-planning, "
                             "judgebench-planning, easy, hard, mmlu-real, gsm8k-real");
    simulate_cmd->add_option("--pair", sim.pair_shapes, "explicit shapes a0 b0 a1 b1")
        ->expected(4);
    simulate_cmd->add_option("--alpha", sim.alpha, "type-I error target");
    simulate_cmd->add_option("--beta", sim.beta, "type-II error target");
    simulate_cmd->add_option("--rmax", sim.r_max, "round cap");
    simulate_cmd->add_option("--rho", sim.rho, "AR(1) latent correlation");
    simulate_cmd->add_option("--epsilon", sim.epsilon, "score clip");
    simulate_cmd->add_option("--n", sim.n_trials, "trials per hypothesis");
    simulate_cmd->add_option("--seed", sim.seed, "RNG seed");
    simulate_cmd->add_option("--mixture", sim.mixture_pi,
                             "run a mixture with this prior on H1 instead of "
                             "per-hypothesis characterization");
    simulate_cmd->add_flag("--zero-drift", sim.zero_drift,
                           "generate both hypotheses from the pair's f1");
    simulate_cmd->add_option("--out", sim.out_dir, "output directory");

    SweepArgs swp;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps emitting CSV");
    sweep_cmd->add_option("--kind", swp.kind,
                          "operating | sensitivity | tertiles | baselines | rmax")
        ->required();
    sweep_cmd->add_option("--scenario", swp.scenario, "pair for operating/sensitivity/baselines");
    sweep_cmd->add_option("--alphas", swp.alphas, "operating-curve alpha grid");
    sweep_cmd->add_option("--deltas", swp.deltas, "sensitivity relative deltas");
    sweep_cmd->add_option("--rmax-values", swp.r_max_values, "rmax sweep grid");
    sweep_cmd->add_option("--alpha", swp.alpha, "type-I error target");
    sweep_cmd->add_option("--beta", swp.beta, "type-II error target");
    sweep_cmd->add_option("--rmax", swp.r_max, "round cap");
    sweep_cmd->add_option("--n", swp.n_trials, "trials per hypothesis");
    sweep_cmd->add_option("--seed", swp.seed, "RNG seed");
    sweep_cmd->add_option("--out", swp.out_dir, "output directory");

    CalibrateArgs cal;
    CLI::App* calibrate_cmd =
        app.add_subcommand("calibrate", "fit (f0, f1) from labeled score sequences");
    calibrate_cmd->add_option("--in", cal.in_path, "labeled ScoreSequence JSONL")
        ->required();
    calibrate_cmd->add_option("--out", cal.out_dir, "output directory");
    calibrate_cmd->add_option("--epsilon", cal.epsilon, "score clip");
    calibrate_cmd->add_option("--min-scores", cal.min_scores, "per-label score floor");

    DebateArgs deb;
    CLI::App* debate_cmd = app.add_subcommand("debate", "run the debate harness");
    debate_cmd->add_option("--config", deb.config_path, "run config JSON")->required();
    debate_cmd->add_flag("--dry-run", deb.dry_run,
                         "scripted backends instead of remote gateways");
    debate_cmd->add_option("--out", deb.out_dir, "output directory");

    GradeArgs grd;
    CLI::App* grade_cmd =
        app.add_subcommand("grade", "re-grade a stored items.jsonl and summarize");
    grade_cmd->add_option("--items", grd.items_path, "items.jsonl path")->required();
    grade_cmd->add_option("--out", grd.out_path, "summary JSON path");

    ReportArgs rpt;
    CLI::App* report_cmd =
        app.add_subcommand("report", "regenerate summaries from stored outputs");
    report_cmd->add_option("--items", rpt.items_path, "items.jsonl path");
    report_cmd->add_option("--simulation", rpt.report_path, "simulation report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate_cmd->parsed()) return cmd_simulate(sim);
        if (sweep_cmd->parsed()) return cmd_sweep(swp);
        if (calibrate_cmd->parsed()) return cmd_calibrate(cal);
        if (debate_cmd->parsed()) return cmd_debate(deb);
        if (grade_cmd->parsed()) return cmd_grade(grd);
        if (report_cmd->parsed()) return cmd_report(rpt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const seqcon::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
