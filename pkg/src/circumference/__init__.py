"""Long cycles through prescribed edges in 3-connected cubic graphs."""
from .bounds import C, R, bound, check_inequality, optimal_exponent, proof_constants_report
from .eulerian import cubify, eulerian_subgraph, expand_vertex
from .graph import Cycle, MultiGraph
from .harness import corpus, oracle_max_cycle, random_cubic_3connected, verify
from .longest import CycleResult, Engine, InternalBoundMiss, long_cycle

__all__ = [
    "C",
    "R",
    "Cycle",
    "CycleResult",
    "Engine",
    "InternalBoundMiss",
    "MultiGraph",
    "bound",
    "check_inequality",
    "corpus",
    "cubify",
    "eulerian_subgraph",
    "expand_vertex",
    "long_cycle",
    "optimal_exponent",
    "oracle_max_cycle",
    "proof_constants_report",
    "random_cubic_3connected",
    "verify",
]
