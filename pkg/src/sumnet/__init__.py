"""Analysis, classification and code construction for 3-source 3-terminal sum-networks."""

from .analysis import AnalysisReport, DisconnectSet, analyze, augment_parallel, classify_abc, disconnect_set, kappa
from .classifier import Labeling, SolvabilityClass, Variant, WitnessPair, classify, verify_witness
from .constructor import (
    SearchBudget,
    SearchResult,
    construct_theorem2,
    cut_bound_check,
    search_fractional,
    search_scalar,
)
from .errors import SumNetError
from .gf import FieldElement, PrimeField
from .multigraph import Edge, SumNetwork, gamma, mincut, reachable, reverse, topological_order
from .netcode import (
    FractionalLinearCode,
    ScalarLinearCode,
    evaluate,
    reverse_code,
    verify_exhaustive,
    verify_fractional,
    verify_transfer,
)
from .oracle import GeneratorConfig, brute_force_solvable, generate_random

__all__ = [
    "AnalysisReport", "DisconnectSet", "analyze", "augment_parallel", "classify_abc", "disconnect_set", "kappa",
    "Labeling", "SolvabilityClass", "Variant", "WitnessPair", "classify", "verify_witness",
    "SearchBudget", "SearchResult", "construct_theorem2", "cut_bound_check", "search_fractional", "search_scalar",
    "SumNetError", "FieldElement", "PrimeField",
    "Edge", "SumNetwork", "gamma", "mincut", "reachable", "reverse", "topological_order",
    "FractionalLinearCode", "ScalarLinearCode", "evaluate", "reverse_code",
    "verify_exhaustive", "verify_fractional", "verify_transfer",
    "GeneratorConfig", "brute_force_solvable", "generate_random",
]
