"""Sequential consensus toolkit: Wald SPRT stopping for multi-agent debate."""

from ._core import (
    BetaParams,
    Decision,
    DecisionKind,
    LikelihoodPair,
    RoundQuantiles,
    SeqconError,
    SimulationReport,
    SprtConfig,
    WaldMonitor,
    asymptotic_rounds,
    calibrate,
    chernoff_fixed_sample_bound,
    clip_score,
    extract_answer,
    grade,
    kl_divergence,
    llr_crossover,
    log_likelihood_ratio,
    planning_pair,
    planning_pair_names,
    simulate,
    thresholds,
)

__version__ = "0.1.0"

__all__ = [
    "BetaParams",
    "Decision",
    "DecisionKind",
    "LikelihoodPair",
    "RoundQuantiles",
    "SeqconError",
    "SimulationReport",
    "SprtConfig",
    "WaldMonitor",
    "asymptotic_rounds",
    "calibrate",
    "chernoff_fixed_sample_bound",
    "clip_score",
    "extract_answer",
    "grade",
    "kl_divergence",
    "llr_crossover",
    "log_likelihood_ratio",
    "planning_pair",
    "planning_pair_names",
    "simulate",
    "thresholds",
]
