"""Minimum-latency cyclic patrol schedules for robot fleets on finite metrics."""

from . import errors
from .decider import Configuration, PeriodicWitness, decide, minimal_latency
from .graphdecomp import (
    Decomposition,
    MultiGraph,
    decompose_even,
    decompose_odd_anchored,
    decompose_with_claw,
    eulerize,
    line_graph,
    make_graph,
)
from .metric import MetricSpace, UnitGraph, from_matrix, from_points, subdivide_integer
from .solver import (
    CyclicSolution,
    SolverConfig,
    assign_robots,
    brute_force_cyclic,
    evaluate,
    solve,
)
from .spanning import (
    Partition,
    SpanningForest,
    coarsen,
    count_long_edges,
    make_partition,
    mst,
    remove_heaviest,
)
from .tsp import Tour, TspAlgorithm, refine_2opt, tour_exact, tour_tree_double

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "CyclicSolution",
    "Decomposition",
    "MetricSpace",
    "MultiGraph",
    "Partition",
    "PeriodicWitness",
    "SolverConfig",
    "SpanningForest",
    "Tour",
    "TspAlgorithm",
    "UnitGraph",
    "assign_robots",
    "brute_force_cyclic",
    "coarsen",
    "count_long_edges",
    "decide",
    "decompose_even",
    "decompose_odd_anchored",
    "decompose_with_claw",
    "errors",
    "evaluate",
    "eulerize",
    "from_matrix",
    "from_points",
    "line_graph",
    "make_graph",
    "make_partition",
    "minimal_latency",
    "mst",
    "remove_heaviest",
    "solve",
    "subdivide_integer",
    "tour_exact",
    "tour_tree_double",
    "refine_2opt",
    "__version__",
]
