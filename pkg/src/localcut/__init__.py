"""Local clustering with truncated random walks, and graph partitioning by
repeated local clustering."""
from .generators import Generated, barbell, generate, planted_cut, ring_of_cliques
from .graph import (Graph, GraphError, SubgraphView, VertexSet, balance, boundary_size, build_graph,
                    conductance, induce_subgraph, volume)
from .nibble import GuaranteeViolation, NibbleRun, nibble, run_nibble
from .params import (ConstantsProfile, CutReport, NibbleParams, derive_params, paper_constants,
                     practical_constants, validate_constants)
from .partition import PartitionTrace, b_distribution, f2, partition, random_nibble
from .sweep import SweepOrder, curve_left_derivative, curve_value, scan_conditions, sweep
from .walk import (SparseMass, WalkStats, degree_profile, evolve_truncated, indicator, lazy_step,
                   truncate)

__version__ = "0.1.0"

__all__ = [
    "ConstantsProfile", "CutReport", "Generated", "Graph", "GraphError", "GuaranteeViolation", "NibbleParams",
    "NibbleRun", "PartitionTrace", "SparseMass", "SubgraphView", "SweepOrder", "VertexSet",
    "WalkStats", "b_distribution", "balance", "barbell", "boundary_size", "build_graph", "conductance",
    "curve_left_derivative", "curve_value", "degree_profile", "derive_params", "evolve_truncated",
    "f2", "generate", "indicator", "induce_subgraph", "lazy_step", "nibble", "paper_constants", "partition", "planted_cut",
    "practical_constants", "random_nibble", "ring_of_cliques", "run_nibble", "scan_conditions", "sweep", "truncate",
    "validate_constants", "volume",
]
