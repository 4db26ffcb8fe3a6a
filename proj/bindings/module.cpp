// Python bindings for the core operations: the Beta likelihood model, the
// Wald monitor, the Monte-Carlo engine, calibration and the answer helpers.
// The debate loop itself stays on the C++/CLI side; Python gets everything
// needed to analyze, calibrate and reproduce runs.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqcon/calibration.hpp"
#include "seqcon/orchestrator.hpp"
#include "seqcon/simulation.hpp"

namespace py = pybind11;
using namespace seqcon;

namespace {

std::string repr_beta(const BetaParams& p) {
    return "BetaParams(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) + ")";
}

Scenario make_scenario(const LikelihoodPair& pair, double alpha, double beta, int r_max,
                       double epsilon_clip, double rho, long n_trials,
                       std::uint64_t seed, std::optional<double> mixture_pi,
                       bool zero_drift) {
    Scenario sc;
    sc.pair = pair;
    sc.config.alpha = alpha;
    sc.config.beta = beta;
    sc.config.r_max = r_max;
    sc.config.epsilon_clip = epsilon_clip;
    sc.rho = rho;
    sc.n_trials = n_trials;
    sc.seed = seed;
    if (mixture_pi) sc.mode = HypothesisMode::mixture(*mixture_pi);
    if (zero_drift) sc.truth_pair = LikelihoodPair{sc.pair.f1, sc.pair.f1, "zero-drift"};
    return sc;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sequential consensus toolkit: Wald SPRT stopping for multi-agent debate";

    py::register_exception<seqcon::error>(m, "SeqconError");

    py::class_<BetaParams>(m, "BetaParams")
        .def(py::init([](double a, double b) {
                 BetaParams p{a, b};
                 validate(p);
                 return p;
             }),
             py::arg("a"), py::arg("b"))
        .def_readonly("a", &BetaParams::a)
        .def_readonly("b", &BetaParams::b)
        .def("mean", &BetaParams::mean)
        .def("variance", &BetaParams::variance)
        .def("__repr__", &repr_beta);

    py::class_<LikelihoodPair>(m, "LikelihoodPair")
        .def(py::init([](const BetaParams& f0, const BetaParams& f1, std::string label) {
                 return LikelihoodPair{f0, f1, std::move(label)};
             }),
             py::arg("f0"), py::arg("f1"), py::arg("domain_label") = "custom")
        .def_readonly("f0", &LikelihoodPair::f0)
        .def_readonly("f1", &LikelihoodPair::f1)
        .def_readonly("domain_label", &LikelihoodPair::domain_label)
        .def("__repr__", [](const LikelihoodPair& p) {
            return "LikelihoodPair(f0=" + repr_beta(p.f0) + ", f1=" + repr_beta(p.f1) +
                   ", domain_label='" + p.domain_label + "')";
        });

    m.def("planning_pair", &planning_pair, py::arg("name"),
          "Built-in likelihood pair by scenario name.");
    m.def("planning_pair_names", &planning_pair_names);
    m.def("log_likelihood_ratio", &log_likelihood_ratio, py::arg("pair"), py::arg("s"),
          "Analytic per-round log-likelihood ratio ln[f1(s)/f0(s)].");
    m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"),
          "Closed-form KL(p || q) between Beta densities, in nats.");
    m.def("llr_crossover", &llr_crossover, py::arg("pair"),
          "Score where the LLR changes sign, or None.");
    m.def("clip_score", &clip_score, py::arg("s"), py::arg("epsilon_clip"));

    py::class_<SprtConfig>(m, "SprtConfig")
        .def(py::init([](double alpha, double beta, int r_max, double epsilon_clip) {
                 SprtConfig cfg{alpha, beta, r_max, epsilon_clip};
                 validate(cfg);
                 return cfg;
             }),
             py::arg("alpha") = 0.05, py::arg("beta") = 0.05, py::arg("r_max") = 8,
             py::arg("epsilon_clip") = 1e-6)
        .def_readonly("alpha", &SprtConfig::alpha)
        .def_readonly("beta", &SprtConfig::beta)
        .def_readonly("r_max", &SprtConfig::r_max)
        .def_readonly("epsilon_clip", &SprtConfig::epsilon_clip);

    m.def("thresholds", &thresholds, py::arg("config"),
          "Decision boundaries (A, B) for the config's error targets.");

    py::enum_<DecisionKind>(m, "DecisionKind")
        .value("Continue", DecisionKind::Continue)
        .value("Consensus", DecisionKind::Consensus)
        .value("NoConsensus", DecisionKind::NoConsensus)
        .value("Capped", DecisionKind::Capped)
        .value("Stopped", DecisionKind::Stopped);

    py::class_<Decision>(m, "Decision")
        .def_readonly("kind", &Decision::kind)
        .def_readonly("round", &Decision::round)
        .def("terminal", &Decision::terminal)
        .def("__repr__", [](const Decision& d) {
            return "Decision(kind=" + to_string(d.kind) +
                   ", round=" + std::to_string(d.round) + ")";
        });

    py::class_<WaldMonitor>(m, "WaldMonitor")
        .def(py::init<LikelihoodPair, SprtConfig>(), py::arg("pair"),
             py::arg("config") = SprtConfig{})
        .def("observe", &WaldMonitor::observe, py::arg("s"),
             "Feed one consensus score; returns the running decision.")
        .def("terminal", &WaldMonitor::terminal)
        .def("decision", &WaldMonitor::decision)
        .def("lambda_", &WaldMonitor::lambda, "Cumulative log-likelihood ratio.")
        .def("round", &WaldMonitor::round)
        .def("threshold_a", &WaldMonitor::threshold_a)
        .def("threshold_b", &WaldMonitor::threshold_b);

    py::class_<RoundQuantiles>(m, "RoundQuantiles")
        .def_readonly("p50", &RoundQuantiles::p50)
        .def_readonly("p95", &RoundQuantiles::p95)
        .def_readonly("p99", &RoundQuantiles::p99);

    py::class_<SimulationReport>(m, "SimulationReport")
        .def_readonly("n_h1", &SimulationReport::n_h1)
        .def_readonly("n_h0", &SimulationReport::n_h0)
        .def_readonly("e_rounds_h1", &SimulationReport::e_rounds_h1)
        .def_readonly("e_rounds_h0", &SimulationReport::e_rounds_h0)
        .def_readonly("avg_rounds", &SimulationReport::avg_rounds)
        .def_readonly("alpha_hat", &SimulationReport::alpha_hat)
        .def_readonly("beta_hat", &SimulationReport::beta_hat)
        .def_readonly("cap_rate", &SimulationReport::cap_rate)
        .def_readonly("frac_consensus", &SimulationReport::frac_consensus)
        .def_readonly("frac_no_consensus", &SimulationReport::frac_no_consensus)
        .def_readonly("frac_capped", &SimulationReport::frac_capped)
        .def_readonly("frac_stopped", &SimulationReport::frac_stopped)
        .def_readonly("classification_accuracy", &SimulationReport::classification_accuracy)
        .def_readonly("classification_accuracy_strict",
                      &SimulationReport::classification_accuracy_strict)
        .def_readonly("round_quantiles", &SimulationReport::round_quantiles)
        .def("to_json", [](const SimulationReport& r) { return report_to_json(r); });

    m.def(
        "simulate",
        [](const LikelihoodPair& pair, double alpha, double beta, int r_max,
           double epsilon_clip, double rho, long n_trials, std::uint64_t seed,
           std::optional<double> mixture_pi, bool zero_drift) {
            return simulate(make_scenario(pair, alpha, beta, r_max, epsilon_clip, rho,
                                          n_trials, seed, mixture_pi, zero_drift));
        },
        py::arg("pair"), py::arg("alpha") = 0.05, py::arg("beta") = 0.05,
        py::arg("r_max") = 8, py::arg("epsilon_clip") = 1e-6, py::arg("rho") = 0.0,
        py::arg("n_trials") = 50000, py::arg("seed") = std::uint64_t{20260517},
        py::arg("mixture_pi") = std::nullopt, py::arg("zero_drift") = false,
        py::call_guard<py::gil_scoped_release>(),
        "Monte-Carlo characterization of the SPRT on one likelihood pair. "
        "n_trials is per hypothesis, or the total when mixture_pi is given.");

    m.def("asymptotic_rounds", &asymptotic_rounds, py::arg("pair"), py::arg("alpha"),
          py::arg("beta"), "Wald's approximate (E[R|H1], E[R|H0]).");
    m.def("chernoff_fixed_sample_bound", &chernoff_fixed_sample_bound, py::arg("pair"),
          py::arg("alpha"), py::arg("beta"));

    m.def(
        "calibrate",
        [](const std::vector<std::pair<std::string, std::vector<double>>>& sequences,
           double epsilon_clip, long min_scores_per_label) {
            std::vector<ScoreSequence> pool;
            pool.reserve(sequences.size());
            long n = 0;
            for (const auto& [label, scores] : sequences) {
                ScoreSequence seq;
                seq.item_id = "seq-" + std::to_string(n++);
                if (label == "H1" || label == "correct" || label == "consensus")
                    seq.label = Label::H1;
                else if (label == "H0" || label == "incorrect" ||
                         label == "no_consensus")
                    seq.label = Label::H0;
                else
                    throw data_error("unknown label " + label);
                seq.scores = scores;
                pool.push_back(std::move(seq));
            }
            CalibrationOptions options;
            options.epsilon_clip = epsilon_clip;
            options.min_scores_per_label = min_scores_per_label;
            const CalibrationArtifact art = calibrate(pool, options);
            py::dict out;
            out["pair"] = art.pair;
            out["kl_f1_f0"] = art.diagnostics.kl_f1_f0;
            out["kl_f0_f1"] = art.diagnostics.kl_f0_f1;
            out["symmetric_kl"] = art.diagnostics.symmetric_kl;
            out["verdict"] = to_string(art.diagnostics.verdict);
            return out;
        },
        py::arg("sequences"), py::arg("epsilon_clip") = 1e-6,
        py::arg("min_scores_per_label") = 10,
        "Fit (f0, f1) from (label, scores) sequences; labels H0/H1 or their "
        "incorrect/correct and no_consensus/consensus aliases.");

    m.def(
        "extract_answer",
        [](const std::string& kind, const std::string& text) {
            return extract_answer(task_kind_from_string(kind), text);
        },
        py::arg("task_kind"), py::arg("text"),
        "Canonical answer from a position text, or None.");
    m.def(
        "grade",
        [](const std::string& kind, const std::string& extracted,
           const std::string& gold) {
            return grade(task_kind_from_string(kind), extracted, gold);
        },
        py::arg("task_kind"), py::arg("extracted"), py::arg("gold"));
}
